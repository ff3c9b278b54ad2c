#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracle.hpp"

using namespace kt;

namespace {

SparseIntMatrix from_dense(const std::vector<std::vector<long>>& d) {
    std::vector<SparseIntMatrix::Row> rows;
    size_t nc = d.empty() ? 0 : d[0].size();
    for (const auto& r : d) {
        SparseIntMatrix::Row row;
        for (size_t c = 0; c < r.size(); ++c)
            if (r[c] != 0) row.emplace_back((uint32_t)c, Int((long)r[c]));
        rows.push_back(row);
    }
    return SparseIntMatrix::from_rows(nc, std::move(rows));
}

SparseIntMatrix random_matrix(oracle::Rng& rng, size_t nr, size_t nc, int density10) {
    std::vector<SparseIntMatrix::Row> rows(nr);
    for (size_t r = 0; r < nr; ++r)
        for (size_t c = 0; c < nc; ++c)
            if (rng.irange(0, 9) < density10) {
                int v = rng.irange(-9, 9);
                if (v) rows[r].emplace_back((uint32_t)c, Int(v));
            }
    return SparseIntMatrix::from_rows(nc, std::move(rows));
}

// product of two thin random matrices: rank at most `inner`
SparseIntMatrix planted_rank(oracle::Rng& rng, size_t nr, size_t nc, size_t inner) {
    std::vector<std::vector<Int>> L(nr, std::vector<Int>(inner)),
        R(inner, std::vector<Int>(nc));
    for (auto& row : L)
        for (auto& v : row) v = rng.irange(-4, 4);
    for (auto& row : R)
        for (auto& v : row) v = rng.irange(-4, 4);
    std::vector<SparseIntMatrix::Row> rows(nr);
    for (size_t r = 0; r < nr; ++r)
        for (size_t c = 0; c < nc; ++c) {
            Int acc = 0;
            for (size_t k = 0; k < inner; ++k) acc += L[r][k] * R[k][c];
            if (sgn(acc) != 0) rows[r].emplace_back((uint32_t)c, acc);
        }
    return SparseIntMatrix::from_rows(nc, std::move(rows));
}

}  // namespace

TEST_CASE("trivial rank examples") {
    auto I3 = from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    for (uint64_t p : rank_primes(0, 2)) CHECK(rank_mod_p(I3, p) == 3);
    CHECK(rank_exact(I3) == 3);

    auto A = from_dense({{2, 4}, {1, 2}});
    CHECK(rank_exact(A) == 1);
    CHECK(rank_exact(from_dense({{0, 0}, {0, 0}})) == 0);
}

TEST_CASE("modular rank is a strict lower bound at a bad prime") {
    uint64_t q = rank_primes(7, 1)[0];
    // [[q, 0], [0, 1]]: rank 1 mod q, exact rank 2
    std::vector<SparseIntMatrix::Row> rows(2);
    rows[0].emplace_back(0, Int(q));
    rows[1].emplace_back(1, Int(1));
    auto A = SparseIntMatrix::from_rows(2, std::move(rows));
    CHECK(rank_mod_p(A, q) == 1);
    CHECK(rank_exact(A) == 2);
}

TEST_CASE("rank_exact equals minor enumeration on random matrices up to 8x8") {
    oracle::Rng rng(2718);
    for (int it = 0; it < 60; ++it) {
        size_t nr = (size_t)rng.irange(1, 8), nc = (size_t)rng.irange(1, 8);
        auto A = random_matrix(rng, nr, nc, rng.irange(3, 9));
        std::vector<std::vector<Int>> dense(nr, std::vector<Int>(nc, Int(0)));
        for (size_t r = 0; r < A.rows.size(); ++r)
            for (const auto& [c, v] : A.rows[r]) dense[r][c] = v;
        dense.resize(A.rows.size());
        CHECK(rank_exact(A) == oracle::minor_rank(dense));
    }
}

TEST_CASE("rank_mod_p <= rank_exact on planted rank deficiencies") {
    oracle::Rng rng(161803);
    auto primes = rank_primes(3, 3);
    for (int it = 0; it < 25; ++it) {
        size_t nr = (size_t)rng.irange(4, 12), nc = (size_t)rng.irange(4, 12);
        size_t inner = (size_t)rng.irange(1, 4);
        auto A = planted_rank(rng, nr, nc, inner);
        size_t re = rank_exact(A);
        CHECK(re <= inner);
        CHECK(re == oracle::dense_rank(oracle::to_dense(A)));
        bool one_matches = false;
        for (uint64_t p : primes) {
            size_t rm = rank_mod_p(A, p);
            CHECK(rm <= re);
            if (rm == re) one_matches = true;
        }
        CHECK(one_matches);
    }
}

TEST_CASE("kernel basis: simple cases and exact verification") {
    auto I2 = from_dense({{1, 0}, {0, 1}});
    CHECK(kernel_basis(I2).basis.empty());

    auto A = from_dense({{1, 1, 0}});
    auto kr = kernel_basis(A);
    CHECK(kr.basis.size() == 2);
    CHECK(kr.cert.kernel_dim == 2);
    CHECK(kr.cert.kernel_verified);
    CHECK(kr.cert.rank + kr.cert.kernel_dim == 3);

    oracle::Rng rng(55);
    for (int it = 0; it < 25; ++it) {
        auto B = planted_rank(rng, 6, 7, (size_t)rng.irange(1, 5));
        auto k = kernel_basis(B);
        CHECK(k.cert.rank + k.cert.kernel_dim == B.ncols);
        CHECK(k.basis.size() == k.cert.kernel_dim);
        for (const auto& v : k.basis) {
            for (const auto& row : B.rows) {
                Rat acc(0);
                for (const auto& [c, val] : row) acc += Rat(val) * v[c];
                CHECK(acc.is_zero());
            }
        }
        // kernel dimension agrees with the dense oracle
        CHECK(k.cert.kernel_dim == B.ncols - oracle::dense_rank(oracle::to_dense(B)));
    }
}

TEST_CASE("certification protocol") {
    oracle::Rng rng(99);
    // full column rank: modular certificate suffices
    auto A = from_dense({{1, 0}, {0, 1}, {3, 5}});
    auto kr = certify_rank(A, 0);
    CHECK(kr.cert.method == RankMethod::modular_full_rank);
    CHECK(kr.cert.rank == 2);
    CHECK(kr.cert.primes_used.size() == 1);
    // deficient: exact elimination is the authority
    auto B = planted_rank(rng, 6, 6, 3);
    auto kb = certify_rank(B, 0);
    CHECK(kb.cert.method == RankMethod::exact_elimination);
    CHECK(kb.cert.kernel_verified);
    CHECK(kb.cert.rank == rank_exact(B));
    // force_exact bypasses the shortcut
    auto kf = certify_rank(A, 0, true);
    CHECK(kf.cert.method == RankMethod::exact_elimination);
    CHECK(kf.cert.rank == 2);
}

TEST_CASE("triplet interchange round trip") {
    oracle::Rng rng(31);
    auto A = random_matrix(rng, 5, 7, 5);
    std::ostringstream os;
    A.write_triplets(os);
    std::istringstream is(os.str());
    auto B = SparseIntMatrix::read_triplets(is);
    CHECK(B.nrows == A.nrows);
    CHECK(B.ncols == A.ncols);
    REQUIRE(B.rows.size() == A.rows.size());
    for (size_t r = 0; r < A.rows.size(); ++r) CHECK(B.rows[r] == A.rows[r]);
    // big integers survive
    std::istringstream big("1 2 2\n0 0 123456789012345678901234567890\n0 1 -7\n");
    auto C = SparseIntMatrix::read_triplets(big);
    CHECK(C.rows[0][0].second == Int("123456789012345678901234567890"));
}

TEST_CASE("from_rows reduces rows and drops zero rows") {
    std::vector<SparseIntMatrix::Row> rows(3);
    rows[0].emplace_back(0, Int(2));
    rows[0].emplace_back(1, Int(-4));
    rows[2].emplace_back(1, Int(5));
    auto A = SparseIntMatrix::from_rows(2, std::move(rows));
    CHECK(A.nrows == 2);
    CHECK(A.zero_rows_removed == 1);
    CHECK(A.rows[0][0].second == 1);
    CHECK(A.rows[0][1].second == -2);
}

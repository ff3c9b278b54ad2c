// Test-only oracles, deliberately independent of the library's sparse
// elimination and gcd paths: dense rational Gaussian elimination, minor
// enumeration ranks, and seeded random generators.
#pragma once

#include <random>
#include <vector>

#include "kt/exact_rank.hpp"
#include "kt/mompoly.hpp"

namespace oracle {

using kt::Int;
using kt::Rat;

using DenseQ = std::vector<std::vector<Rat>>;

inline size_t dense_rank(DenseQ m) {
    if (m.empty()) return 0;
    size_t nr = m.size(), nc = m[0].size();
    size_t rank = 0, row = 0;
    for (size_t c = 0; c < nc && row < nr; ++c) {
        size_t piv = SIZE_MAX;
        for (size_t r = row; r < nr; ++r)
            if (!m[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv == SIZE_MAX) continue;
        std::swap(m[row], m[piv]);
        for (size_t r = 0; r < nr; ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            Rat f = m[r][c] / m[row][c];
            for (size_t cc = 0; cc < nc; ++cc)
                if (!m[row][cc].is_zero()) m[r][cc] -= f * m[row][cc];
        }
        ++row;
        ++rank;
    }
    return rank;
}

inline DenseQ to_dense(const kt::SparseIntMatrix& A) {
    DenseQ m(A.nrows, std::vector<Rat>(A.ncols, Rat(0)));
    for (size_t r = 0; r < A.rows.size(); ++r)
        for (const auto& [c, v] : A.rows[r]) m[r][c] = Rat(v);
    return m;
}

// determinant by cofactor expansion with subset memoization; independent of
// any elimination code
inline Int subset_det(const std::vector<std::vector<Int>>& a) {
    size_t n = a.size();
    std::vector<Int> memo(size_t(1) << n, Int(0));
    std::vector<char> known(size_t(1) << n, 0);
    // det over rows 0..k-1 using the column subset `mask` (popcount k)
    // iterative over masks in increasing popcount
    memo[0] = 1;
    known[0] = 1;
    for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
        int k = __builtin_popcountll(mask);
        Int acc = 0;
        int sign = 1;
        int idx = 0;
        for (size_t c = 0; c < n; ++c) {
            if (!(mask & (size_t(1) << c))) continue;
            size_t sub = mask & ~(size_t(1) << c);
            if (sgn(a[k - 1][c]) != 0) {
                Int term = a[k - 1][c] * memo[sub];
                if (sign < 0) term = -term;
                acc += term;
            }
            sign = -sign;
            ++idx;
        }
        memo[mask] = acc;
        known[mask] = 1;
    }
    return memo[(size_t(1) << n) - 1];
}

// rank by enumerating minors (matrices up to ~8x8)
inline size_t minor_rank(const std::vector<std::vector<Int>>& a) {
    size_t nr = a.size();
    if (nr == 0) return 0;
    size_t nc = a[0].size();
    size_t maxk = std::min(nr, nc);
    for (size_t k = maxk; k >= 1; --k) {
        std::vector<size_t> rows(k), cols(k);
        // iterate row subsets
        std::vector<char> rsel(nr, 0);
        std::fill(rsel.begin(), rsel.begin() + k, 1);
        std::sort(rsel.begin(), rsel.end());  // lexicographic via prev_permutation
        do {
            size_t ri = 0;
            for (size_t r = 0; r < nr; ++r)
                if (rsel[r]) rows[ri++] = r;
            std::vector<char> csel(nc, 0);
            std::fill(csel.begin(), csel.begin() + k, 1);
            std::sort(csel.begin(), csel.end());
            do {
                size_t ci = 0;
                for (size_t c = 0; c < nc; ++c)
                    if (csel[c]) cols[ci++] = c;
                std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = 0; j < k; ++j) sub[i][j] = a[rows[i]][cols[j]];
                if (sgn(subset_det(sub)) != 0) return k;
            } while (std::next_permutation(csel.begin(), csel.end()));
        } while (std::next_permutation(rsel.begin(), rsel.end()));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// random generators

struct Rng {
    std::mt19937_64 g;
    explicit Rng(uint64_t seed) : g(seed) {}

    int irange(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

    Rat rat(int maxnum = 9, int maxden = 5) {
        int n = irange(-maxnum, maxnum);
        int d = irange(1, maxden);
        return Rat(n, d);
    }

    Rat nonzero_rat(int maxnum = 9, int maxden = 5) {
        while (true) {
            Rat r = rat(maxnum, maxden);
            if (!r.is_zero()) return r;
        }
    }

    kt::BiPoly bipoly(int maxdeg = 3, int terms = 4) {
        kt::BiPoly p;
        for (int t = 0; t < terms; ++t) {
            kt::BiPoly mono;
            mono.set_coeff({irange(0, maxdeg), irange(0, maxdeg)}, rat());
            p += mono;
        }
        return p;
    }

    kt::BiPoly nonzero_bipoly(int maxdeg = 3, int terms = 4) {
        while (true) {
            kt::BiPoly p = bipoly(maxdeg, terms);
            if (!p.is_zero()) return p;
        }
    }

    kt::RatFunc ratfunc(int maxdeg = 2, int terms = 3) {
        return kt::RatFunc(bipoly(maxdeg, terms), nonzero_bipoly(maxdeg, terms));
    }

    kt::MomPoly mompoly(int maxmomdeg = 2, int terms = 3, int coeffdeg = 1) {
        kt::MomPoly p;
        for (int t = 0; t < terms; ++t) {
            kt::MExp e;
            int budget = maxmomdeg;
            for (int i = 0; i < 4; ++i) {
                e.e[i] = irange(0, budget);
                budget -= e.e[i];
            }
            p.add_term(e, ratfunc(coeffdeg, 2));
        }
        return p;
    }
};

}  // namespace oracle

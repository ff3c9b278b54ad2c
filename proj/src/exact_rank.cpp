#include "kt/exact_rank.hpp"

#include <algorithm>
#include <climits>
#include <istream>
#include <map>
#include <ostream>

namespace kt {

SparseIntMatrix SparseIntMatrix::from_rows(size_t ncols, std::vector<Row> in_rows) {
    SparseIntMatrix A;
    A.ncols = ncols;
    for (auto& r : in_rows) {
        std::sort(r.begin(), r.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        r.erase(std::remove_if(r.begin(), r.end(),
                               [](const Entry& e) { return sgn(e.second) == 0; }),
                r.end());
        if (r.empty()) {
            ++A.zero_rows_removed;
            continue;
        }
        Int g = 0;
        for (const auto& [c, v] : r) {
            g = gcd(g, v);
            if (g == 1) break;
        }
        if (g != 1)
            for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        A.row_scales.push_back(Rat(1, g));
        A.rows.push_back(std::move(r));
    }
    A.nrows = A.rows.size();
    return A;
}

void SparseIntMatrix::write_triplets(std::ostream& os) const {
    size_t nnz = 0;
    for (const auto& r : rows) nnz += r.size();
    os << nrows << " " << ncols << " " << nnz << "\n";
    for (size_t i = 0; i < rows.size(); ++i)
        for (const auto& [c, v] : rows[i]) os << i << " " << c << " " << v.get_str() << "\n";
}

SparseIntMatrix SparseIntMatrix::read_triplets(std::istream& is) {
    size_t nrows, ncols, nnz;
    if (!(is >> nrows >> ncols >> nnz)) throw parse_error("triplet header malformed");
    std::vector<Row> rows(nrows);
    for (size_t n = 0; n < nnz; ++n) {
        size_t r, c;
        std::string v;
        if (!(is >> r >> c >> v)) throw parse_error("triplet entry malformed");
        if (r >= nrows || c >= ncols) throw parse_error("triplet index out of range");
        rows[r].emplace_back((uint32_t)c, Int(v));
    }
    return from_rows(ncols, std::move(rows));
}

std::string rank_method_name(RankMethod m) {
    switch (m) {
        case RankMethod::modular_full_rank: return "modular-full-rank";
        case RankMethod::exact_elimination: return "exact-elimination";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// primes

namespace {

uint64_t mulmod_u(uint64_t a, uint64_t b, uint64_t p) {
    return (uint64_t)((unsigned __int128)a * b % p);
}

uint64_t powmod_u(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u(r, a, p);
        a = mulmod_u(a, a, p);
        e >>= 1;
    }
    return r;
}

// deterministic Miller-Rabin, exact for n < 2^64
bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                       31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while (!(d & 1)) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                       31ull, 37ull}) {
        uint64_t x = powmod_u(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

uint64_t splitmix(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

std::vector<uint64_t> rank_primes(unsigned seed, size_t count) {
    std::vector<uint64_t> out;
    uint64_t st = 0x5eed0000u + seed;
    while (out.size() < count) {
        uint64_t c = (splitmix(st) % (1ull << 61)) + (1ull << 61);  // 62 bits
        c |= 1;
        while (!is_prime_u64(c)) c += 2;
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// modular rank: left-looking sparse elimination over GF(p). Pivot rows are
// frozen fully reduced against earlier pivots, so reducing a fresh row
// terminates (each step can only introduce strictly later pivot columns).

namespace {

using ModRow = std::vector<std::pair<uint32_t, uint64_t>>;

struct ModPivot {
    uint32_t col;
    uint64_t inv_val;
    ModRow row;  // sorted by column, includes the pivot entry
};

ModRow mod_axpy(const ModRow& r, uint64_t factor, const ModRow& s, uint64_t p) {
    // r - factor * s
    ModRow out;
    out.reserve(r.size() + s.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || s[j].first < r[i].first) {
            uint64_t v = mulmod_u(factor, s[j].second, p);
            if (v) out.emplace_back(s[j].first, p - v);
            ++j;
        } else {
            uint64_t v = mulmod_u(factor, s[j].second, p);
            uint64_t t = r[i].second;
            t = (t >= v) ? t - v : t + p - v;
            if (t) out.emplace_back(r[i].first, t);
            ++i;
            ++j;
        }
    }
    return out;
}

size_t mod_rank(const SparseIntMatrix& A, uint64_t p,
                std::vector<uint32_t>* pivot_cols_out) {
    std::vector<ModRow> pending;
    pending.reserve(A.rows.size());
    for (const auto& r : A.rows) {
        ModRow mr;
        mr.reserve(r.size());
        for (const auto& [c, v] : r) {
            uint64_t m = mpz_fdiv_ui(v.get_mpz_t(), p);
            if (m) mr.emplace_back(c, m);
        }
        if (!mr.empty()) pending.push_back(std::move(mr));
    }
    std::sort(pending.begin(), pending.end(),
              [](const ModRow& a, const ModRow& b) { return a.size() < b.size(); });

    std::vector<ModPivot> pivots;
    std::map<uint32_t, size_t> pivot_of_col;
    for (auto& row : pending) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [c, v] : row) {
                auto it = pivot_of_col.find(c);
                if (it == pivot_of_col.end()) continue;
                const ModPivot& pv = pivots[it->second];
                uint64_t factor = mulmod_u(v, pv.inv_val, p);
                row = mod_axpy(row, factor, pv.row, p);
                changed = true;
                break;
            }
        }
        if (row.empty()) continue;
        uint32_t pc = row.front().first;
        uint64_t pval = row.front().second;
        pivot_of_col[pc] = pivots.size();
        pivots.push_back({pc, powmod_u(pval, p - 2, p), std::move(row)});
    }
    if (pivot_cols_out) {
        pivot_cols_out->clear();
        for (const auto& pv : pivots) pivot_cols_out->push_back(pv.col);
    }
    return pivots.size();
}

}  // namespace

size_t rank_mod_p(const SparseIntMatrix& A, uint64_t prime) {
    return mod_rank(A, prime, nullptr);
}

// ---------------------------------------------------------------------------
// exact fraction-free elimination: integer rows, every update
// r := (pivot * r - r[pc] * pivot_row) followed by content division, with
// min-row/min-column Markowitz-style pivoting.

namespace {

struct ExactElim {
    std::vector<SparseIntMatrix::Row> rows;
    size_t ncols;
    std::vector<uint32_t> pivot_cols;
    std::vector<SparseIntMatrix::Row> echelon_rows;

    explicit ExactElim(const SparseIntMatrix& A) : rows(A.rows), ncols(A.ncols) {}

    static void content_reduce(SparseIntMatrix::Row& r) {
        Int g = 0;
        for (const auto& [c, v] : r) {
            g = gcd(g, v);
            if (g == 1) return;
        }
        if (g > 1)
            for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }

    static SparseIntMatrix::Row combine(const SparseIntMatrix::Row& r, const Int& a,
                                        const SparseIntMatrix::Row& s, const Int& b) {
        // a*r - b*s
        SparseIntMatrix::Row out;
        out.reserve(r.size() + s.size());
        size_t i = 0, j = 0;
        while (i < r.size() || j < s.size()) {
            if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
                out.emplace_back(r[i].first, a * r[i].second);
                ++i;
            } else if (i == r.size() || s[j].first < r[i].first) {
                out.emplace_back(s[j].first, -(b * s[j].second));
                ++j;
            } else {
                Int v = a * r[i].second - b * s[j].second;
                if (sgn(v) != 0) out.emplace_back(r[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        content_reduce(out);
        return out;
    }

    size_t run() {
        std::vector<uint32_t> colcount(ncols, 0);
        for (const auto& r : rows)
            for (const auto& [c, v] : r) ++colcount[c];
        std::vector<char> done(rows.size(), 0);
        while (true) {
            // sparsest live row, then its entry with fewest column occupants
            size_t best_row = SIZE_MAX, best_nnz = SIZE_MAX;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (done[i] || rows[i].empty()) continue;
                if (rows[i].size() < best_nnz) {
                    best_nnz = rows[i].size();
                    best_row = i;
                }
            }
            if (best_row == SIZE_MAX) break;
            uint32_t best_col = 0;
            uint32_t best_cc = UINT32_MAX;
            size_t best_bits = SIZE_MAX;
            Int pval;
            for (const auto& [c, v] : rows[best_row]) {
                size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
                if (colcount[c] < best_cc ||
                    (colcount[c] == best_cc && bits < best_bits)) {
                    best_cc = colcount[c];
                    best_bits = bits;
                    best_col = c;
                    pval = v;
                }
            }
            const SparseIntMatrix::Row prow = std::move(rows[best_row]);
            rows[best_row].clear();
            done[best_row] = 1;
            for (const auto& [c, v] : prow) --colcount[c];
            for (size_t i = 0; i < rows.size(); ++i) {
                if (done[i] || rows[i].empty()) continue;
                Int rv;
                bool has = false;
                for (const auto& [c, v] : rows[i])
                    if (c == best_col) {
                        rv = v;
                        has = true;
                        break;
                    }
                if (!has) continue;
                for (const auto& [c, v] : rows[i]) --colcount[c];
                rows[i] = combine(rows[i], pval, prow, rv);
                for (const auto& [c, v] : rows[i]) ++colcount[c];
            }
            pivot_cols.push_back(best_col);
            echelon_rows.push_back(std::move(prow));
        }
        return pivot_cols.size();
    }
};

std::vector<Rat> kernel_vector(const std::vector<SparseIntMatrix::Row>& echelon,
                               const std::vector<uint32_t>& pivot_cols, size_t ncols,
                               uint32_t f) {
    std::vector<Rat> v(ncols, Rat(0));
    v[f] = Rat(1);
    // every echelon row is free of earlier pivot columns, so reverse order
    // is triangular
    for (size_t s = echelon.size(); s-- > 0;) {
        uint32_t pc = pivot_cols[s];
        Rat acc(0);
        Rat pivot;
        for (const auto& [c, val] : echelon[s]) {
            if (c == pc) {
                pivot = Rat(val);
                continue;
            }
            if (!v[c].is_zero()) acc += Rat(val) * v[c];
        }
        v[pc] = -(acc / pivot);
    }
    return v;
}

bool verify_kernel_vector(const SparseIntMatrix& A, const std::vector<Rat>& v) {
    for (const auto& r : A.rows) {
        Rat acc(0);
        for (const auto& [c, val] : r)
            if (!v[c].is_zero()) acc += Rat(val) * v[c];
        if (!acc.is_zero()) return false;
    }
    return true;
}

}  // namespace

size_t rank_exact(const SparseIntMatrix& A) {
    ExactElim e(A);
    return e.run();
}

KernelResult kernel_basis(const SparseIntMatrix& A) {
    ExactElim e(A);
    size_t rank = e.run();
    KernelResult out;
    out.cert.rank = rank;
    out.cert.method = RankMethod::exact_elimination;
    out.cert.kernel_dim = A.ncols - rank;
    std::vector<char> is_pivot(A.ncols, 0);
    for (uint32_t c : e.pivot_cols) is_pivot[c] = 1;
    for (uint32_t c = 0; c < A.ncols; ++c) {
        if (is_pivot[c]) continue;
        auto v = kernel_vector(e.echelon_rows, e.pivot_cols, A.ncols, c);
        if (!verify_kernel_vector(A, v))
            throw internal_error("kernel verification failed: A*v != 0 exactly");
        out.basis.push_back(std::move(v));
    }
    out.cert.kernel_verified = true;
    if (out.basis.size() != out.cert.kernel_dim)
        throw internal_error("kernel dimension mismatch");
    return out;
}

KernelResult certify_rank(const SparseIntMatrix& A, unsigned seed, bool force_exact) {
    if (force_exact) {
        auto out = kernel_basis(A);
        return out;
    }
    auto primes = rank_primes(seed, 3);
    std::vector<size_t> mod_ranks;
    for (uint64_t p : primes) {
        size_t r = rank_mod_p(A, p);
        if (r == A.ncols) {
            // full column rank mod p certifies full rank over Q
            KernelResult out;
            out.cert.rank = r;
            out.cert.method = RankMethod::modular_full_rank;
            out.cert.primes_used = {p};
            out.cert.kernel_dim = 0;
            out.cert.kernel_verified = true;  // empty kernel
            return out;
        }
        mod_ranks.push_back(r);
    }
    KernelResult out = kernel_basis(A);
    for (size_t i = 0; i < mod_ranks.size(); ++i) {
        if (mod_ranks[i] > out.cert.rank)
            throw internal_error("modular rank exceeds exact rank");
        if (mod_ranks[i] == out.cert.rank) out.cert.primes_used.push_back(primes[i]);
    }
    return out;
}

}  // namespace kt

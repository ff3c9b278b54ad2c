#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kt/rat.hpp"

namespace kt {

/// Sparse matrix with big-integer entries. Rows are gcd-reduced; identically
/// zero rows are removed and counted at construction time.
struct SparseIntMatrix {
    using Entry = std::pair<uint32_t, Int>;
    using Row = std::vector<Entry>;  // sorted by column

    size_t nrows = 0;  // live rows
    size_t ncols = 0;
    std::vector<Row> rows;
    std::vector<Rat> row_scales;  // exact positive scale applied to each live row
    size_t zero_rows_removed = 0;

    static SparseIntMatrix from_rows(size_t ncols, std::vector<Row> rows);

    /// Triplet interchange format: "nrows ncols nnz" then "row col value".
    void write_triplets(std::ostream& os) const;
    static SparseIntMatrix read_triplets(std::istream& is);
};

enum class RankMethod { modular_full_rank, exact_elimination };

std::string rank_method_name(RankMethod m);

struct RankCertificate {
    size_t rank = 0;
    RankMethod method = RankMethod::exact_elimination;
    std::vector<uint64_t> primes_used;
    size_t kernel_dim = 0;
    bool kernel_verified = false;
};

/// Deterministic 62-bit primes derived from a seed (Miller-Rabin certified,
/// exact for the 64-bit range).
std::vector<uint64_t> rank_primes(unsigned seed, size_t count);

/// Rank over GF(prime); always a lower bound for the rational rank.
size_t rank_mod_p(const SparseIntMatrix& A, uint64_t prime);

/// Exact rational rank via fraction-free elimination (integer rows, content
/// division after each update) with Markowitz-style pivoting.
size_t rank_exact(const SparseIntMatrix& A);

struct KernelResult {
    std::vector<std::vector<Rat>> basis;  // right kernel, dense vectors
    RankCertificate cert;
};

/// Exact right kernel basis. Every vector is verified against A by exact
/// multiplication; a verification failure is an internal-consistency abort.
KernelResult kernel_basis(const SparseIntMatrix& A);

/// Certification protocol: full column rank mod p certifies rank over Q and
/// stops; otherwise the exact elimination path runs and the kernel is
/// extracted and verified. force_exact skips the modular shortcut.
KernelResult certify_rank(const SparseIntMatrix& A, unsigned seed, bool force_exact = false);

}  // namespace kt

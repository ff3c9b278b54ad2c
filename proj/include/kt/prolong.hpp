#pragma once

#include <iosfwd>
#include <memory>

#include "kt/exact_rank.hpp"
#include "kt/killing.hpp"

namespace kt {

/// Prolonged equation identifier: base order-0 equation differentiated m
/// times, mu of them w.r.t. x.
struct PEqId {
    uint32_t base = 0;  // index into EquationSet::ids
    int m = 0;
    int mu = 0;
};

/// Column ordering of the jet unknowns: block by the homogeneity index l
/// (equivalently by i), then by derivative order m, then (j, k, mu).
struct UnknownIndex {
    std::vector<UnknownId> ids;
    std::map<UnknownId, uint32_t> pos;

    uint32_t at(const UnknownId& u) const {
        auto it = pos.find(u);
        if (it == pos.end()) throw internal_error("unknown index miss: " + u.str());
        return it->second;
    }
    size_t size() const { return ids.size(); }
};

/// The order-M prolongation of the order-0 system. Rows are materialized
/// symbolically on demand (exact Leibniz differentiation); the evaluation
/// path computes coefficient derivative values directly at the point, which
/// produces the same rational numbers without building every derivative
/// polynomial.
class ProlongedSystem {
  public:
    ProlongedSystem(EquationSet base, int M);

    const EquationSet& base() const { return base_; }
    const BranchSpec& branch() const { return base_.branch; }
    int M() const { return M_; }
    const std::vector<PEqId>& rows() const { return rows_; }
    const UnknownIndex& index() const { return index_; }

    /// Exact Leibniz materialization of a prolonged row.
    LinearForm symbolic_row(const PEqId& r) const;

    std::string row_name(const PEqId& r) const;

  private:
    EquationSet base_;
    int M_;
    std::vector<PEqId> rows_;
    UnknownIndex index_;
    mutable std::map<std::tuple<uint32_t, int, int>, LinearForm> row_cache_;
};

ProlongedSystem prolong(EquationSet base, int M);

using QEntry = std::pair<uint32_t, Rat>;
using QRow = std::vector<QEntry>;  // sorted by column ordinal

/// The algebraic system evaluated at an exact rational point, with gauge and
/// elimination bookkeeping. Column states: active, gauge-fixed (set to zero
/// using the trivial family) or eliminated (expressed by a logged row).
class PointSystem {
  public:
    enum class ColState : uint8_t { active, gauged, eliminated };

    struct Subst {
        uint32_t col;
        QRow row;  // the expressing row, including the pivot entry
    };

    Point point;
    BranchSpec branch;
    int M = 0;
    UnknownIndex index;
    std::vector<EqId> base_ids;  // order-0 equation indices, for cell ordering

    std::vector<QRow> rows;          // live rows (empty ones dropped)
    std::vector<PEqId> row_ids;      // parallel to rows
    std::vector<QRow> original_rows; // evaluated rows before gauge/elimination
    std::vector<PEqId> original_ids;

    size_t zero_rows_dropped = 0;       // identically zero at the point
    size_t zero_rows_elimination = 0;   // became zero during substitution

    std::vector<ColState> col_state;
    std::vector<uint32_t> gauge_cols;
    std::vector<std::vector<Rat>> gauge_combos;  // trivial combination per zeroed column
    std::vector<Subst> eliminated;               // substitution log, in order

    size_t n_active_cols() const;
    std::vector<uint32_t> active_cols() const;

    void dump(std::ostream& os) const;
};

/// Algorithm step (ii) first half: exact evaluation. Throws point_error with
/// the offending equation id if a coefficient denominator vanishes.
PointSystem evaluate(const ProlongedSystem& sys, const Point& point);

/// Jet of a degree-d momentum polynomial at the point, as a dense vector over
/// the column ordinals (orders up to M+1).
std::vector<Rat> point_jet(const MomPoly& P, int d, const UnknownIndex& index,
                           const Point& point, int M);

/// Algorithm step (ii) second half: zero out a maximal set of order-0
/// unknowns (j = 0 preferred) against the trivial family jets. Exactly
/// invertible selection; the number zeroed equals the family span dimension
/// at the point.
void gauge_fix(PointSystem& ps, const std::vector<std::vector<Rat>>& family_jets);

/// Algorithm step (iii): iteratively substitute away unknowns that appear as
/// the unique top-order unknown of some row. Nullity-preserving.
void eliminate(PointSystem& ps);

/// Algorithm step (iv) first half: clear denominators row by row and reduce
/// by the gcd; columns are compressed to the active set (mapping returned
/// inside the matrix as col_map).
struct IntMatrixResult {
    SparseIntMatrix matrix;
    std::vector<uint32_t> col_map;  // matrix column -> original ordinal
};
IntMatrixResult to_int_matrix(const PointSystem& ps);

/// Express a kernel vector of the reduced matrix in the full ordinal space:
/// active columns from v, gauge-fixed columns zero, eliminated columns by
/// back-substitution through the log.
std::vector<Rat> lift_solution(const PointSystem& ps, const std::vector<uint32_t>& col_map,
                               const std::vector<Rat>& v);

/// Exact check of a full-ordinal vector against every originally evaluated row.
bool satisfies_original(const PointSystem& ps, const std::vector<Rat>& full);

}  // namespace kt

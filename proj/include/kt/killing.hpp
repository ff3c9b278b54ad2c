#pragma once

#include <vector>

#include "kt/metric.hpp"
#include "kt/unknowns.hpp"

namespace kt {

/// One parity branch of the integral ansatz for a given valence.
struct BranchSpec {
    int d = 0;              // valence of the integral
    int e = 0;              // parity of the (p_x, p_y) degree
    PhiParity phi = PhiParity::any;
    int multiplicity = 1;   // static-split accounting (the middle branch counts twice)

    int e_tilde() const { return (d + e) & 1; }  // parity of d + e
    std::string str() const;
};

/// Index of an order-0 equation: the coefficient of
/// p1^(i-j) p2^j p3^k p4^(d+1-i-k) in the Poisson bracket.
struct EqId {
    int i = 0, j = 0, k = 0;
    friend auto operator<=>(const EqId&, const EqId&) = default;
};

/// The order-0 linear PDE system for one branch: every equation index in the
/// branch range appears, identically-zero ones as empty forms. Unknowns have
/// derivative order <= 1.
struct EquationSet {
    BranchSpec branch;
    std::vector<EqId> ids;
    std::vector<LinearForm> forms;  // parallel to ids
};

/// Complete unknown list at order m = 0 for the branch.
std::vector<UnknownId> ansatz(const BranchSpec& b);

/// Equation index range for the branch (parity opposite to e in (p_x,p_y)).
std::vector<EqId> equation_ids(const BranchSpec& b);

/// Build the order-0 system from the Hamiltonian. Requires H even in
/// (p_x, p_y); with phi-even branches also even in p_phi.
EquationSet equations(const MomPoly& H, const BranchSpec& b);

/// All trivial integrals p_phi^alpha p_t^beta H^gamma with
/// alpha + beta + 2 gamma = d that lie in the branch, expanded.
std::vector<MomPoly> trivial_family(const MomPoly& H, int d, const BranchSpec& b);
/// Just their (alpha, beta, gamma) exponents, cheap.
std::vector<std::array<int, 3>> trivial_family_exponents(int d, const BranchSpec& b);

/// Number of trivial integrals of valence d in dimension D (all branches).
long long trivials_count(int d, int D = 4);

/// Unknown/equation counts for the branch after M prolongations.
long long nvars(const BranchSpec& b, int M);
long long meqns(const BranchSpec& b, int M);

/// The paper's closed forms (phi unrestricted); exact big-integer evaluation.
long long nvars_closed(int d, int e, int M);
long long meqns_closed(int d, int e, int M);

/// Refined split for static metrics: S_d once, S_{d-1} twice, S_{d-2} once,
/// every branch phi-even with e = parity of its own valence.
std::vector<BranchSpec> static_split_plan(int d);

/// Symbolic jet of a momentum polynomial: the (i,j,k,m,mu) jet symbol value
/// as an exact RatFunc, with memoized derivative chains.
class SymbolicJet {
  public:
    SymbolicJet(const MomPoly& P, int d);
    RatFunc operator()(const UnknownId& u) const;

  private:
    int d_;
    mutable std::map<UnknownId, RatFunc> cache_;
};

}  // namespace kt

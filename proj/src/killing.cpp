#include "kt/killing.hpp"

#include <sstream>

namespace kt {

std::string BranchSpec::str() const {
    std::ostringstream os;
    os << "d=" << d << " e=" << e
       << " phi=" << (phi == PhiParity::even ? "even" : "any");
    if (multiplicity != 1) os << " x" << multiplicity;
    return os.str();
}

std::string UnknownId::str() const {
    std::ostringstream os;
    os << "I(" << i << "," << j << "," << k << ";" << m << "," << mu << ")";
    return os.str();
}

std::vector<UnknownId> ansatz(const BranchSpec& b) {
    std::vector<UnknownId> out;
    for (int i = (b.e & 1); i <= b.d; i += 2)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k <= b.d - i; k += (b.phi == PhiParity::even ? 2 : 1))
                out.push_back({i, j, k, 0, 0});
    return out;
}

std::vector<EqId> equation_ids(const BranchSpec& b) {
    std::vector<EqId> out;
    for (int i = 1 - (b.e & 1); i <= b.d + 1; i += 2)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k <= b.d + 1 - i; k += (b.phi == PhiParity::even ? 2 : 1))
                out.push_back({i, j, k});
    return out;
}

EquationSet equations(const MomPoly& H, const BranchSpec& b) {
    if (!(H.parity_project({0, PhiParity::any}) == H))
        throw internal_error("equations: H not even in (p_x, p_y)");
    if (b.phi == PhiParity::even && !(H.parity_project({0, PhiParity::even}) == H))
        throw internal_error("equations: phi-even branch needs H even in p_phi");

    // ansatz as a momentum polynomial over linear forms
    MPoly<LinearForm> I;
    for (const UnknownId& u : ansatz(b)) {
        MExp e;
        e.e[0] = u.i - u.j;
        e.e[1] = u.j;
        e.e[2] = u.k;
        e.e[3] = b.d - u.i - u.k;
        LinearForm lf;
        lf.add_term(u, RatFunc(Rat(1)));
        I.add_term(e, lf);
    }
    MPoly<LinearForm> bracket = poisson(H, I);

    EquationSet out;
    out.branch = b;
    out.ids = equation_ids(b);
    out.forms.resize(out.ids.size());
    std::map<EqId, size_t> pos;
    for (size_t n = 0; n < out.ids.size(); ++n) pos[out.ids[n]] = n;
    for (const auto& [e, lf] : bracket.terms()) {
        if (e.total() != b.d + 1)
            throw internal_error("equations: bracket not homogeneous of degree d+1");
        EqId id{e.e[0] + e.e[1], e.e[1], e.e[2]};
        auto it = pos.find(id);
        if (it == pos.end())
            throw internal_error("equations: bracket coefficient outside branch range");
        if (lf.max_order() > 1)
            throw internal_error("equations: system not first order");
        out.forms[it->second] = lf;
    }
    return out;
}

std::vector<std::array<int, 3>> trivial_family_exponents(int d, const BranchSpec& b) {
    std::vector<std::array<int, 3>> out;
    if ((b.e & 1) != 0) return out;  // every trivial monomial is (p_x,p_y)-even
    for (int gamma = 0; 2 * gamma <= d; ++gamma)
        for (int alpha = 0; alpha <= d - 2 * gamma;
             alpha += (b.phi == PhiParity::even ? 2 : 1))
            out.push_back({alpha, d - 2 * gamma - alpha, gamma});
    return out;
}

std::vector<MomPoly> trivial_family(const MomPoly& H, int d, const BranchSpec& b) {
    std::vector<MomPoly> out;
    for (const auto& [alpha, beta, gamma] : trivial_family_exponents(d, b)) {
        MExp e;
        e.e[2] = alpha;
        e.e[3] = beta;
        out.push_back(mixed_mul(mom_monomial(e, RatFunc(Rat(1))), mom_pow(H, gamma)));
    }
    return out;
}

long long trivials_count(int d, int D) {
    long long total = 0;
    for (int l = 0; 2 * l <= d; ++l) {
        // C(D + d - 2l - 3, d - 2l)
        int n = D + d - 2 * l - 3, k = d - 2 * l;
        if (k < 0 || n < k) continue;
        long long c = 1;
        for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
        total += c;
    }
    return total;
}

namespace {

long long base_unknowns(const BranchSpec& b) {
    long long s = 0;
    for (int i = (b.e & 1); i <= b.d; i += 2) {
        int nk = (b.phi == PhiParity::even) ? (b.d - i) / 2 + 1 : b.d - i + 1;
        s += (long long)(i + 1) * nk;
    }
    return s;
}

long long base_equations(const BranchSpec& b) {
    long long s = 0;
    for (int i = 1 - (b.e & 1); i <= b.d + 1; i += 2) {
        int nk = (b.phi == PhiParity::even) ? (b.d + 1 - i) / 2 + 1 : b.d + 2 - i;
        s += (long long)(i + 1) * nk;
    }
    return s;
}

}  // namespace

long long nvars(const BranchSpec& b, int M) {
    // unknown jets run up to order M+1: C(M+3, 2) derivative slots
    return base_unknowns(b) * ((long long)(M + 2) * (M + 3) / 2);
}

long long meqns(const BranchSpec& b, int M) {
    return base_equations(b) * ((long long)(M + 1) * (M + 2) / 2);
}

long long nvars_closed(int d, int e, int M) {
    long et = (d + e) & 1;
    long S = e + et;
    Int v = Int(d + 2 - S) * Int(M + 2) * Int(M + 3) *
            Int((long)d * d + d * S - 2 * S * S + 4 * d + 6 * e * (S - 1) + 2 * S + 6);
    if (!mpz_divisible_ui_p(v.get_mpz_t(), 24)) throw internal_error("nvars_closed: not /24");
    return Int(v / 24).get_si();
}

long long meqns_closed(int d, int e, int M) {
    long et = (d + e) & 1;
    long D = e - et;
    Int v = Int(d + 2 + D) * Int(M + 1) * Int(M + 2) *
            Int((long)d * d - d * D - 2 * D * D + 6 * e * D + 7 * d - 5 * D + 12);
    if (!mpz_divisible_ui_p(v.get_mpz_t(), 24)) throw internal_error("meqns_closed: not /24");
    return Int(v / 24).get_si();
}

std::vector<BranchSpec> static_split_plan(int d) {
    if (d < 0) throw std::invalid_argument("static_split_plan: negative valence");
    std::vector<BranchSpec> plan;
    plan.push_back({d, d & 1, PhiParity::even, 1});
    if (d - 1 >= 0) plan.push_back({d - 1, (d - 1) & 1, PhiParity::even, 2});
    if (d - 2 >= 0) plan.push_back({d - 2, d & 1, PhiParity::even, 1});
    return plan;
}

SymbolicJet::SymbolicJet(const MomPoly& P, int d) : d_(d) {
    for (const auto& [e, c] : P.terms()) {
        if (e.total() != d)
            throw internal_error("SymbolicJet: polynomial not homogeneous of degree d");
        UnknownId u{e.deg_xy(), e.e[1], e.e[2], 0, 0};
        cache_[u] = c;
    }
}

RatFunc SymbolicJet::operator()(const UnknownId& u) const {
    auto it = cache_.find(u);
    if (it != cache_.end()) return it->second;
    if (u.m == 0) return RatFunc();  // coefficient absent from the polynomial
    UnknownId parent = u;
    int var;
    if (u.mu > 0) {
        parent.m -= 1;
        parent.mu -= 1;
        var = 0;
    } else {
        parent.m -= 1;
        var = 1;
    }
    RatFunc val = (*this)(parent).diff(var);
    cache_[u] = val;
    return val;
}

}  // namespace kt

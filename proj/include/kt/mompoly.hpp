#pragma once

#include <array>
#include <map>
#include <string>

#include "kt/ratfunc.hpp"

namespace kt {

/// Momentum exponent tuple for (p_x, p_y, p_phi, p_t) = (p1, p2, p3, p4).
struct MExp {
    std::array<int, 4> e{0, 0, 0, 0};
    friend auto operator<=>(const MExp&, const MExp&) = default;
    int total() const { return e[0] + e[1] + e[2] + e[3]; }
    int deg_xy() const { return e[0] + e[1]; }
};

/// Parity restriction for momentum polynomials: e is the parity (0/1) of the
/// total (p_x, p_y) degree, phi the parity of the p_phi degree.
enum class PhiParity { even, odd, any };

struct ParityClass {
    int e = 0;  // parity in (p_x, p_y)
    PhiParity phi = PhiParity::any;
};

/// Polynomial in the four momenta with coefficients in C, where C models an
/// algebra over RatFunc with partial derivatives in the base coordinates.
/// Coefficients depend on (x, y) only; the ignorable coordinates never enter.
template <class C>
class MPoly {
  public:
    using TermMap = std::map<MExp, C>;

    MPoly() = default;

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.total());
        return d;
    }

    void add_term(const MExp& e, const C& c) {
        if (c.is_zero()) return;
        auto [it, ins] = terms_.try_emplace(e, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    C coeff(const MExp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C() : it->second;
    }

    MPoly operator-() const {
        MPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    MPoly& operator+=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { a += b; return a; }
    friend MPoly operator-(MPoly a, const MPoly& b) { a -= b; return a; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    /// Derivative w.r.t. a non-ignorable coordinate (0 -> x, 1 -> y):
    /// applied coefficient-wise.
    MPoly diff_coord(int var) const {
        MPoly r;
        for (const auto& [e, c] : terms_) r.add_term(e, c.diff(var));
        return r;
    }

    /// Derivative w.r.t. momentum p_idx (0..3).
    MPoly diff_momentum(int idx) const {
        MPoly r;
        for (const auto& [e, c] : terms_) {
            if (e.e[idx] == 0) continue;
            MExp ne = e;
            ne.e[idx] -= 1;
            r.add_term(ne, c * RatFunc(Rat(e.e[idx])));
        }
        return r;
    }

    MPoly scaled(const RatFunc& f) const {
        MPoly r;
        if (f.is_zero()) return r;
        for (const auto& [e, c] : terms_) r.add_term(e, c * f);
        return r;
    }

    /// Keep only terms matching the parity class.
    MPoly parity_project(const ParityClass& pc) const {
        MPoly r;
        for (const auto& [e, c] : terms_) {
            if ((e.deg_xy() & 1) != pc.e) continue;
            if (pc.phi == PhiParity::even && (e.e[2] & 1)) continue;
            if (pc.phi == PhiParity::odd && !(e.e[2] & 1)) continue;
            r.terms_.emplace(e, c);
        }
        return r;
    }

  private:
    TermMap terms_;
};

using MomPoly = MPoly<RatFunc>;

MomPoly mom_monomial(const MExp& e, const RatFunc& c);
MomPoly operator*(const MomPoly& a, const MomPoly& b);
MomPoly mom_pow(const MomPoly& a, unsigned n);
std::string mom_str(const MomPoly& p);

/// Product of a plain momentum polynomial with one over coefficient algebra C.
template <class C>
MPoly<C> mixed_mul(const MomPoly& a, const MPoly<C>& b) {
    MPoly<C> r;
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            MExp e;
            for (int i = 0; i < 4; ++i) e.e[i] = ea.e[i] + eb.e[i];
            r.add_term(e, cb * ca);
        }
    }
    return r;
}

/// Reduced Poisson bracket {A, B} = sum over the non-ignorable coordinates
/// x, y of dA/dx^c dB/dp_c - dA/dp_c dB/dx^c. The ignorable pair (phi, t)
/// drops out because coefficients do not depend on them.
template <class C>
MPoly<C> poisson(const MomPoly& a, const MPoly<C>& b) {
    MPoly<C> r;
    for (int c = 0; c < 2; ++c) {
        r += mixed_mul(a.diff_coord(c), b.diff_momentum(c));
        r -= mixed_mul(a.diff_momentum(c), b.diff_coord(c));
    }
    return r;
}

}  // namespace kt

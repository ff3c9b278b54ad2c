#pragma once

#include <functional>
#include <map>

#include "kt/ratfunc.hpp"

namespace kt {

/// Jet symbol for an integral coefficient: the coefficient function indexed
/// by (i, j, k) -- degree i in (p_x, p_y), j of which on p_y, degree k in
/// p_phi -- differentiated m times in total, mu of them w.r.t. x.
struct UnknownId {
    int i = 0;
    int j = 0;
    int k = 0;
    int m = 0;
    int mu = 0;
    friend auto operator<=>(const UnknownId&, const UnknownId&) = default;

    UnknownId shifted(int var) const {
        UnknownId u = *this;
        u.m += 1;
        if (var == 0) u.mu += 1;
        return u;
    }
    std::string str() const;
};

/// Homogeneous linear combination of jet symbols with RatFunc coefficients.
class LinearForm {
  public:
    using TermMap = std::map<UnknownId, RatFunc>;

    LinearForm() = default;

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(const UnknownId& u, const RatFunc& c) {
        if (c.is_zero()) return;
        auto [it, ins] = terms_.try_emplace(u, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int max_order() const {
        int m = -1;
        for (const auto& [u, c] : terms_) m = std::max(m, u.m);
        return m;
    }

    LinearForm operator-() const {
        LinearForm r;
        for (const auto& [u, c] : terms_) r.terms_.emplace(u, -c);
        return r;
    }
    LinearForm& operator+=(const LinearForm& o) {
        for (const auto& [u, c] : o.terms_) add_term(u, c);
        return *this;
    }
    LinearForm& operator-=(const LinearForm& o) {
        for (const auto& [u, c] : o.terms_) add_term(u, -c);
        return *this;
    }
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { a += b; return a; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { a -= b; return a; }
    friend LinearForm operator*(const LinearForm& a, const RatFunc& f) {
        LinearForm r;
        if (f.is_zero()) return r;
        for (const auto& [u, c] : a.terms_) r.terms_.emplace(u, c * f);
        return r;
    }
    friend bool operator==(const LinearForm& a, const LinearForm& b) {
        return a.terms_ == b.terms_;
    }

    /// d/dvar of sum c_u * u = sum (c_u' * u + c_u * shift(u, var)).
    LinearForm diff(int var) const {
        LinearForm r;
        for (const auto& [u, c] : terms_) {
            r.add_term(u, c.diff(var));
            r.add_term(u.shifted(var), c);
        }
        return r;
    }

    /// Substitute symbolic jet values (exact RatFunc per symbol).
    RatFunc substitute(const std::function<RatFunc(const UnknownId&)>& jet) const {
        RatFunc acc;
        for (const auto& [u, c] : terms_) acc += c * jet(u);
        return acc;
    }

    /// Substitute rational jet values at a point.
    Rat substitute_point(const std::function<Rat(const UnknownId&)>& jet,
                         const Point& p) const {
        Rat acc(0);
        for (const auto& [u, c] : terms_) acc += c.eval(p) * jet(u);
        return acc;
    }

  private:
    TermMap terms_;
};

}  // namespace kt

#pragma once

#include <map>
#include <string>
#include <vector>

#include "kt/rat.hpp"

namespace kt {

/// Exponent pair (degree in x, degree in y). Ordered lexicographically;
/// the maximal pair under this order defines the leading term.
struct Exp2 {
    int a = 0;
    int b = 0;
    friend auto operator<=>(const Exp2&, const Exp2&) = default;
};

/// Sparse bivariate polynomial over Rat. Term map never stores zero
/// coefficients, so structural equality is canonical equality.
class BiPoly {
  public:
    using TermMap = std::map<Exp2, Rat>;

    BiPoly() = default;
    explicit BiPoly(const Rat& c) {
        if (!c.is_zero()) terms_[{0, 0}] = c;
    }

    static BiPoly variable(int idx, int power = 1);  // idx 0 -> x, 1 -> y
    static BiPoly constant(const Rat& c) { return BiPoly(c); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exp2{0, 0});
    }
    Rat constant_value() const;  // requires is_constant()

    int deg_x() const;
    int deg_y() const;
    int total_deg() const;
    size_t n_terms() const { return terms_.size(); }

    /// Leading term under the lexicographic exponent order.
    std::pair<Exp2, Rat> leading() const;
    Rat coeff(Exp2 e) const;
    void set_coeff(Exp2 e, const Rat& c);

    BiPoly operator-() const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { a += b; return a; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { a -= b; return a; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly& operator*=(const BiPoly& o) { *this = *this * o; return *this; }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    BiPoly scaled(const Rat& c) const;
    BiPoly pow(unsigned n) const;
    BiPoly diff(int var) const;  // var 0 -> d/dx, 1 -> d/dy
    Rat eval(const Point& p) const;
    /// Substitute x -> x0 + s, y -> y0 + t; exact expansion in (s, t).
    BiPoly shifted(const Point& p0) const;

    std::string str(const std::string& xname = "x", const std::string& yname = "y") const;

  private:
    TermMap terms_;
};

/// Content (gcd of coefficient numerators / lcm of denominators, signed so
/// that poly = content * primitive_part with primitive integer part whose
/// leading coefficient keeps the original sign).
Rat content(const BiPoly& f);
BiPoly primitive_part(const BiPoly& f);  // f / content(f); integer coefficients

/// Polynomial gcd of the primitive integer parts, times gcd of contents being
/// irrelevant here: inputs are taken primitive. Result is primitive with
/// positive leading coefficient. gcd(0, g) = |g| normalized.
BiPoly poly_gcd(const BiPoly& f, const BiPoly& g);

/// Exact division: returns q with f = q * g. Throws internal_error if g does
/// not divide f (callers only use it on known-divisible input).
BiPoly poly_divexact(const BiPoly& f, const BiPoly& g);

}  // namespace kt

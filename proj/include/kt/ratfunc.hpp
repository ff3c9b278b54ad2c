#pragma once

#include <string>

#include "kt/bipoly.hpp"

namespace kt {

/// Exact rational function in (x, y). Canonical form: num and den have
/// integer coefficients, gcd(num, den) = 1 including contents, den has
/// positive leading coefficient (lex order) and is never zero. Structural
/// equality is mathematical equality.
class RatFunc {
  public:
    RatFunc() : num_(), den_(BiPoly(Rat(1))) {}
    RatFunc(const Rat& c) : RatFunc(BiPoly(c), BiPoly(Rat(1))) {}
    RatFunc(int c) : RatFunc(Rat(c)) {}
    RatFunc(BiPoly num, BiPoly den);
    explicit RatFunc(BiPoly num) : RatFunc(std::move(num), BiPoly(Rat(1))) {}

    static RatFunc variable(int idx) { return RatFunc(BiPoly::variable(idx)); }

    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
    RatFunc& operator/=(const RatFunc& o) { *this = *this / o; return *this; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RatFunc inv() const;
    RatFunc pow(unsigned n) const;

    /// Exact partial derivative (var 0 -> x, 1 -> y) via the quotient rule,
    /// with the gcd(den, den') factor cancelled before normalization.
    RatFunc diff(int var) const;

    /// Exact value at a rational point; throws point_error if den vanishes.
    Rat eval(const Point& p) const;
    bool den_vanishes_at(const Point& p) const;

    std::string str(const std::string& xname = "x", const std::string& yname = "y") const;

  private:
    BiPoly num_, den_;
};

}  // namespace kt

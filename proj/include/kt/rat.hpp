#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kt {

using Int = mpz_class;

/// Thrown when a point evaluation hits a vanishing denominator, i.e. the
/// point is not admissible for the expression or system at hand.
struct point_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed input (expression grammar, metric files, matrix files).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an exact self-check fails. Never caught and downgraded.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Exact rational scalar. Canonical at all times: gcd(|num|, den) = 1,
/// den >= 1, zero stored as 0/1.
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(static_cast<signed long>(n)) {}
    Rat(int n) : v_(n) {}
    Rat(const Int& n) : v_(n) {}
    Rat(const Int& num, const Int& den) : v_(num, den) {
        if (sgn(den) == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    Rat(long num, long den) : Rat(Int(num), Int(den)) {}

    static Rat from_string(std::string_view s);

    const Int num() const { return v_.get_num(); }
    const Int den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::invalid_argument("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

    Rat inv() const {
        if (is_zero()) throw std::invalid_argument("Rat: inverse of zero");
        return Rat(mpq_class(1 / v_));
    }

    std::string str() const;

  private:
    explicit Rat(mpq_class q) : v_(std::move(q)) {}
    mpq_class v_;
};

using Point = std::pair<Rat, Rat>;

std::string point_str(const Point& p);

}  // namespace kt

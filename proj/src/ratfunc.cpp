#include "kt/ratfunc.hpp"

namespace kt {

RatFunc::RatFunc(BiPoly n, BiPoly d) {
    if (d.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
    if (n.is_zero()) {
        num_ = BiPoly();
        den_ = BiPoly(Rat(1));
        return;
    }
    Rat cn = content(n), cd = content(d);
    BiPoly N = n.scaled(cn.inv());
    BiPoly D = d.scaled(cd.inv());
    BiPoly G = poly_gcd(N, D);
    if (!(G.is_constant())) {
        N = poly_divexact(N, G);
        D = poly_divexact(D, G);
    }
    Rat s = cn / cd;
    num_ = N.scaled(Rat(s.num()));
    den_ = D.scaled(Rat(s.den()));
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    BiPoly d0 = poly_gcd(a.den_, b.den_);
    if (d0.is_constant()) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    BiPoly bq = poly_divexact(b.den_, d0);
    BiPoly aq = poly_divexact(a.den_, d0);
    return RatFunc(a.num_ * bq + b.num_ * aq, a.den_ * bq);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    // cross-cancel before multiplying to keep the final gcd trivial
    BiPoly an = a.num_, bd = b.den_, bn = b.num_, ad = a.den_;
    BiPoly g1 = poly_gcd(an, bd);
    if (!g1.is_constant()) {
        an = poly_divexact(an, g1);
        bd = poly_divexact(bd, g1);
    }
    BiPoly g2 = poly_gcd(bn, ad);
    if (!g2.is_constant()) {
        bn = poly_divexact(bn, g2);
        ad = poly_divexact(ad, g2);
    }
    return RatFunc(an * bn, ad * bd);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::invalid_argument("RatFunc: division by zero");
    RatFunc binv;
    binv.num_ = b.den_;
    binv.den_ = b.num_;
    if (binv.den_.leading().second.sign() < 0) {
        binv.num_ = -binv.num_;
        binv.den_ = -binv.den_;
    }
    return a * binv;
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw std::invalid_argument("RatFunc: inverse of zero");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_.leading().second.sign() < 0) {
        r.num_ = -r.num_;
        r.den_ = -r.den_;
    }
    return r;
}

RatFunc RatFunc::pow(unsigned n) const {
    RatFunc r(Rat(1));
    RatFunc base = *this;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

RatFunc RatFunc::diff(int var) const {
    if (is_zero()) return RatFunc();
    BiPoly dn = num_.diff(var);
    if (den_.is_constant()) {
        RatFunc r;
        if (dn.is_zero()) return r;
        return RatFunc(std::move(dn), den_);
    }
    BiPoly dd = den_.diff(var);
    // (n/d)' = (n' dhat - n (d'/g)) / (d dhat)  with g = gcd(d, d'), dhat = d/g
    BiPoly g = poly_gcd(den_, dd);
    BiPoly dhat = g.is_constant() ? den_ : poly_divexact(den_, g);
    BiPoly ddg = g.is_constant() ? dd : poly_divexact(dd, g);
    return RatFunc(dn * dhat - num_ * ddg, den_ * dhat);
}

Rat RatFunc::eval(const Point& p) const {
    Rat d = den_.eval(p);
    if (d.is_zero())
        throw point_error("denominator vanishes at " + point_str(p));
    return num_.eval(p) / d;
}

bool RatFunc::den_vanishes_at(const Point& p) const { return den_.eval(p).is_zero(); }

std::string RatFunc::str(const std::string& xname, const std::string& yname) const {
    if (is_zero()) return "0";
    if (den_.is_constant() && den_.constant_value().is_one()) return num_.str(xname, yname);
    std::string n = num_.str(xname, yname);
    std::string d = den_.str(xname, yname);
    bool np = num_.n_terms() > 1;
    bool dp = den_.n_terms() > 1 || den_.leading().first != Exp2{0, 0};
    return (np ? "(" + n + ")" : n) + "/" + (dp ? "(" + d + ")" : d);
}

}  // namespace kt

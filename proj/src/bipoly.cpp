#include "kt/bipoly.hpp"

#include <algorithm>
#include <sstream>

namespace kt {

BiPoly BiPoly::variable(int idx, int power) {
    BiPoly p;
    Exp2 e = (idx == 0) ? Exp2{power, 0} : Exp2{0, power};
    p.terms_[e] = Rat(1);
    return p;
}

Rat BiPoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    return terms_.begin()->second;
}

int BiPoly::deg_x() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.a);
    return d;
}

int BiPoly::deg_y() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.b);
    return d;
}

int BiPoly::total_deg() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.a + e.b);
    return d;
}

std::pair<Exp2, Rat> BiPoly::leading() const {
    if (terms_.empty()) return {{0, 0}, Rat(0)};
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

Rat BiPoly::coeff(Exp2 e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void BiPoly::set_coeff(Exp2 e, const Rat& c) {
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

BiPoly BiPoly::operator-() const {
    BiPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exp2 e{ea.a + eb.a, ea.b + eb.b};
            auto [it, inserted] = r.terms_.try_emplace(e, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

BiPoly BiPoly::scaled(const Rat& c) const {
    BiPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

BiPoly BiPoly::pow(unsigned n) const {
    BiPoly r(Rat(1));
    BiPoly base = *this;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

BiPoly BiPoly::diff(int var) const {
    BiPoly r;
    for (const auto& [e, c] : terms_) {
        int k = (var == 0) ? e.a : e.b;
        if (k == 0) continue;
        Exp2 ne = (var == 0) ? Exp2{e.a - 1, e.b} : Exp2{e.a, e.b - 1};
        r.terms_.emplace(ne, c * Rat(k));
    }
    return r;
}

Rat BiPoly::eval(const Point& p) const {
    // cache powers of x and y up to the needed degree
    std::vector<Rat> px(deg_x() + 1), py(deg_y() + 1);
    px[0] = Rat(1);
    py[0] = Rat(1);
    for (size_t i = 1; i < px.size(); ++i) px[i] = px[i - 1] * p.first;
    for (size_t i = 1; i < py.size(); ++i) py[i] = py[i - 1] * p.second;
    Rat acc(0);
    for (const auto& [e, c] : terms_) acc += c * px[e.a] * py[e.b];
    return acc;
}

BiPoly BiPoly::shifted(const Point& p0) const {
    // binomial expansion of each term around (x0, y0)
    BiPoly total;
    int dx = deg_x(), dy = deg_y();
    // Pascal rows cached as Rat multiplied by powers of x0 resp. y0:
    // (x0 + s)^a = sum_i C(a,i) x0^(a-i) s^i
    std::vector<std::vector<Rat>> xrows(dx + 1), yrows(dy + 1);
    auto build = [](std::vector<std::vector<Rat>>& rows, const Rat& v) {
        for (size_t a = 0; a < rows.size(); ++a) {
            rows[a].resize(a + 1);
            std::vector<Int> binom(a + 1);
            binom[0] = 1;
            for (size_t i = 1; i <= a; ++i) binom[i] = binom[i - 1] * Int(a - i + 1) / Int(i);
            Rat pw(1);
            for (size_t i = 0; i <= a; ++i) {
                rows[a][a - i] = Rat(binom[a - i]) * pw;  // coefficient of s^(a-i): C(a,a-i) v^i
                pw *= v;
            }
        }
    };
    build(xrows, p0.first);
    build(yrows, p0.second);
    for (const auto& [e, c] : terms_) {
        for (int i = 0; i <= e.a; ++i) {
            Rat cx = c * xrows[e.a][i];
            if (cx.is_zero()) continue;
            for (int j = 0; j <= e.b; ++j) {
                Rat v = cx * yrows[e.b][j];
                if (!v.is_zero()) {
                    auto [it, ins] = total.terms_.try_emplace(Exp2{i, j}, v);
                    if (!ins) {
                        it->second += v;
                        if (it->second.is_zero()) total.terms_.erase(it);
                    }
                }
            }
        }
    }
    return total;
}

std::string BiPoly::str(const std::string& xname, const std::string& yname) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rat cc = c;
        if (first) {
            if (cc.sign() < 0) {
                os << "-";
                cc = -cc;
            }
        } else {
            os << (cc.sign() < 0 ? " - " : " + ");
            if (cc.sign() < 0) cc = -cc;
        }
        first = false;
        bool has_var = (e.a > 0 || e.b > 0);
        if (!cc.is_one() || !has_var) {
            os << cc.str();
            if (has_var) os << "*";
        }
        if (e.a > 0) {
            os << xname;
            if (e.a > 1) os << "^" << e.a;
            if (e.b > 0) os << "*";
        }
        if (e.b > 0) {
            os << yname;
            if (e.b > 1) os << "^" << e.b;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// content / primitive part

Rat content(const BiPoly& f) {
    if (f.is_zero()) return Rat(0);
    Int den_lcm = 1, num_gcd = 0;
    for (const auto& [e, c] : f.terms()) {
        Int d = c.den();
        Int g = gcd(den_lcm, d);
        den_lcm = den_lcm / g * d;
    }
    for (const auto& [e, c] : f.terms()) {
        Int scaled = c.num() * (den_lcm / c.den());
        num_gcd = gcd(num_gcd, scaled);
    }
    Rat c(num_gcd, den_lcm);
    if (f.leading().second.sign() < 0) c = -c;
    return c;
}

BiPoly primitive_part(const BiPoly& f) {
    if (f.is_zero()) return f;
    return f.scaled(content(f).inv());
}

// ---------------------------------------------------------------------------
// exact multivariate division (single divisor, known divisible)

BiPoly poly_divexact(const BiPoly& f, const BiPoly& g) {
    if (g.is_zero()) throw internal_error("poly_divexact: division by zero poly");
    BiPoly rem = f, q;
    auto [lg, cg] = g.leading();
    while (!rem.is_zero()) {
        auto [lr, cr] = rem.leading();
        if (lr.a < lg.a || lr.b < lg.b)
            throw internal_error("poly_divexact: not divisible (monomial)");
        Exp2 qe{lr.a - lg.a, lr.b - lg.b};
        Rat qc = cr / cg;
        BiPoly qt;
        qt.set_coeff(qe, qc);
        q += qt;
        rem -= qt * g;
        auto lr2 = rem.leading();
        if (!rem.is_zero() && !(lr2.first < lr))
            throw internal_error("poly_divexact: no progress (not divisible)");
    }
    return q;
}

// ---------------------------------------------------------------------------
// gcd machinery: dense recursive view, Z coefficients

namespace {

using UP = std::vector<Int>;  // univariate in y, index = degree
using XP = std::vector<UP>;   // index = degree in x

int up_deg(const UP& u) {
    for (int i = (int)u.size() - 1; i >= 0; --i)
        if (sgn(u[i]) != 0) return i;
    return -1;
}

bool up_is_zero(const UP& u) { return up_deg(u) < 0; }

void up_trim(UP& u) { u.resize(up_deg(u) + 1); }

UP up_mul(const UP& a, const UP& b) {
    if (a.empty() || b.empty()) return {};
    UP r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (sgn(b[j]) != 0) r[i + j] += a[i] * b[j];
    }
    up_trim(r);
    return r;
}

UP up_sub(UP a, const UP& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    up_trim(a);
    return a;
}

UP up_scale(const UP& a, const Int& c) {
    if (sgn(c) == 0) return {};
    UP r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

Int up_content(const UP& a) {
    Int g = 0;
    for (const auto& c : a) {
        g = gcd(g, c);
        if (g == 1) break;
    }
    return g;
}

UP up_divexact_const(const UP& a, const Int& c) {
    UP r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), c.get_mpz_t());
    }
    return r;
}

// primitive part, preserving the sign of the leading coefficient
UP up_pp(UP a) {
    int d = up_deg(a);
    if (d < 0) return {};
    Int c = up_content(a);
    if (c != 1) a = up_divexact_const(a, c);
    up_trim(a);
    return a;
}

// pseudo-remainder of u by v (in-place degree reduction)
UP up_prem(UP u, const UP& v) {
    int dv = up_deg(v);
    const Int& lc = v[dv];
    int e = up_deg(u) - dv + 1;
    while (true) {
        int du = up_deg(u);
        if (du < dv) break;
        UP t(du - dv + 1 + dv + 1);
        // t = u_lead * x^(du-dv) * v
        UP shifted(du + 1);
        for (int i = 0; i <= dv; ++i) shifted[i + du - dv] = v[i] * u[du];
        u = up_sub(up_scale(u, lc), shifted);
        --e;
    }
    if (e > 0) {
        Int f;
        mpz_pow_ui(f.get_mpz_t(), lc.get_mpz_t(), e);
        u = up_scale(u, f);
    }
    return u;
}

UP up_gcd_raw(UP a, UP b) {
    if (up_is_zero(a)) return up_pp(std::move(b));
    if (up_is_zero(b)) return up_pp(std::move(a));
    Int ca = up_content(a), cb = up_content(b);
    Int cc = gcd(ca, cb);
    a = up_divexact_const(a, ca);
    b = up_divexact_const(b, cb);
    up_trim(a);
    up_trim(b);
    if (up_deg(a) < up_deg(b)) std::swap(a, b);
    while (!up_is_zero(b)) {
        UP r = up_prem(a, b);
        a = std::move(b);
        b = up_pp(std::move(r));
    }
    a = up_pp(std::move(a));
    if (up_deg(a) >= 0 && sgn(a[up_deg(a)]) < 0)
        for (auto& c : a) c = -c;
    return up_scale(a, cc);
}

int xp_deg(const XP& u) {
    for (int i = (int)u.size() - 1; i >= 0; --i)
        if (!up_is_zero(u[i])) return i;
    return -1;
}

void xp_trim(XP& u) { u.resize(xp_deg(u) + 1); }

XP xp_scale_up(const XP& a, const UP& c) {
    XP r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = up_mul(a[i], c);
    return r;
}

XP xp_sub(XP a, const XP& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] = up_sub(std::move(a[i]), b[i]);
    xp_trim(a);
    return a;
}

UP xp_cont(const XP& a) {
    UP g;
    for (const auto& c : a) {
        if (up_is_zero(c)) continue;
        g = up_gcd_raw(g, c);
        if (up_deg(g) == 0 && (g[0] == 1 || g[0] == -1)) return {Int(1)};
    }
    return g;
}

// divide every coefficient by the univariate u (exact)
XP xp_divexact_up(const XP& a, const UP& u) {
    if (up_deg(u) == 0) {
        XP r(a.size());
        for (size_t i = 0; i < a.size(); ++i) {
            if (up_is_zero(a[i])) continue;
            r[i] = up_divexact_const(a[i], u[0]);
        }
        return r;
    }
    // univariate exact division per coefficient
    XP r(a.size());
    int du = up_deg(u);
    for (size_t i = 0; i < a.size(); ++i) {
        UP rem = a[i];
        int dr = up_deg(rem);
        if (dr < 0) continue;
        UP q(dr - du + 1);
        while (true) {
            dr = up_deg(rem);
            if (dr < du) break;
            Int qc;
            if (!mpz_divisible_p(rem[dr].get_mpz_t(), u[du].get_mpz_t()))
                throw internal_error("xp_divexact_up: not divisible");
            mpz_divexact(qc.get_mpz_t(), rem[dr].get_mpz_t(), u[du].get_mpz_t());
            q[dr - du] = qc;
            UP t(dr + 1);
            for (int k = 0; k <= du; ++k) t[k + dr - du] = u[k] * qc;
            rem = up_sub(std::move(rem), t);
        }
        if (!up_is_zero(rem)) throw internal_error("xp_divexact_up: nonzero remainder");
        r[i] = std::move(q);
    }
    return r;
}

XP xp_pp(XP a) {
    if (xp_deg(a) < 0) return {};
    xp_trim(a);
    UP c = xp_cont(a);
    if (!(up_deg(c) == 0 && c[0] == 1)) a = xp_divexact_up(a, c);
    xp_trim(a);
    return a;
}

XP xp_prem(XP u, const XP& v) {
    int dv = xp_deg(v);
    const UP& lc = v[dv];
    int e = xp_deg(u) - dv + 1;
    while (true) {
        int du = xp_deg(u);
        if (du < dv) break;
        XP t(du + 1);
        for (int i = 0; i <= dv; ++i) t[i + du - dv] = up_mul(v[i], u[du]);
        u = xp_sub(xp_scale_up(u, lc), t);
        --e;
    }
    for (; e > 0; --e) u = xp_scale_up(u, lc);
    return u;
}

XP to_xp(const BiPoly& f) {
    XP r(f.deg_x() + 1);
    for (const auto& [e, c] : f.terms()) {
        if (r[e.a].size() < size_t(e.b + 1)) r[e.a].resize(e.b + 1);
        if (c.den() != 1) throw internal_error("to_xp: non-integer coefficient");
        r[e.a][e.b] = c.num();
    }
    return r;
}

BiPoly from_xp(const XP& f) {
    BiPoly r;
    for (size_t a = 0; a < f.size(); ++a)
        for (size_t b = 0; b < f[a].size(); ++b)
            if (sgn(f[a][b]) != 0) r.set_coeff({(int)a, (int)b}, Rat(f[a][b]));
    return r;
}

// --- modular coprimality fast path ------------------------------------------

constexpr uint64_t kGcdPrime = 4611686018427387847ull;  // 2^62 - 57, prime

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return (uint64_t)((unsigned __int128)a * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t up_eval_mod(const UP& u, uint64_t y0, uint64_t p) {
    uint64_t acc = 0;
    for (int i = (int)u.size() - 1; i >= 0; --i) {
        acc = mulmod(acc, y0, p);
        uint64_t c = mpz_fdiv_ui(u[i].get_mpz_t(), p);
        acc += c;
        if (acc >= p) acc -= p;
    }
    return acc;
}

int gf_deg(const std::vector<uint64_t>& a) {
    for (int i = (int)a.size() - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

// degree of gcd over GF(p); -1 if both zero
int gf_gcd_deg(std::vector<uint64_t> a, std::vector<uint64_t> b, uint64_t p) {
    int da = gf_deg(a), db = gf_deg(b);
    if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
    }
    while (db >= 0) {
        // a mod b
        uint64_t inv = powmod(b[db], p - 2, p);
        for (int k = da; k >= db; --k) {
            if (!a[k]) continue;
            uint64_t q = mulmod(a[k], inv, p);
            for (int i = 0; i <= db; ++i) {
                uint64_t s = mulmod(q, b[i], p);
                uint64_t& t = a[k - db + i];
                t = (t >= s) ? t - s : t + p - s;
            }
        }
        da = gf_deg(a);
        std::swap(a, b);
        std::swap(da, db);
    }
    return da;
}

// Proves gcd of x-primitive F, G is 1 (returns true). False means unknown.
bool proves_coprime(const XP& F, const XP& G) {
    int df = xp_deg(F), dg = xp_deg(G);
    if (df < 1 || dg < 1) return false;
    uint64_t p = kGcdPrime;
    for (uint64_t y0 = 3; y0 < 40; y0 += 7) {
        if (up_eval_mod(F[df], y0, p) == 0) continue;
        if (up_eval_mod(G[dg], y0, p) == 0) continue;
        std::vector<uint64_t> uf(df + 1), ug(dg + 1);
        for (int i = 0; i <= df; ++i) uf[i] = up_eval_mod(F[i], y0, p);
        for (int i = 0; i <= dg; ++i) ug[i] = up_eval_mod(G[i], y0, p);
        return gf_gcd_deg(std::move(uf), std::move(ug), p) == 0;
    }
    return false;
}

}  // namespace

BiPoly poly_gcd(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero() && g.is_zero()) return BiPoly();
    if (f.is_zero()) return primitive_part(g);
    if (g.is_zero()) return primitive_part(f);

    BiPoly F = primitive_part(f), G = primitive_part(g);
    if (F == G) return F;

    // strip the common monomial factor first
    auto min_exps = [](const BiPoly& p) {
        int ma = INT32_MAX, mb = INT32_MAX;
        for (const auto& [e, c] : p.terms()) {
            ma = std::min(ma, e.a);
            mb = std::min(mb, e.b);
        }
        return Exp2{ma, mb};
    };
    Exp2 mf = min_exps(F), mg = min_exps(G);
    Exp2 common{std::min(mf.a, mg.a), std::min(mf.b, mg.b)};
    auto strip = [](const BiPoly& p, Exp2 s) {
        if (s.a == 0 && s.b == 0) return p;
        BiPoly r;
        for (const auto& [e, c] : p.terms()) r.set_coeff({e.a - s.a, e.b - s.b}, c);
        return r;
    };
    F = strip(F, mf);
    G = strip(G, mg);
    BiPoly mono;
    mono.set_coeff(common, Rat(1));

    if (F.is_constant() || G.is_constant()) return mono;  // primitive parts: unit content

    XP xf = to_xp(F), xg = to_xp(G);
    UP cf = xp_cont(xf), cg = xp_cont(xg);
    UP cc = up_gcd_raw(cf, cg);
    bool cf1 = up_deg(cf) == 0 && (cf[0] == 1);
    bool cg1 = up_deg(cg) == 0 && (cg[0] == 1);
    if (!cf1) xf = xp_divexact_up(xf, cf);
    if (!cg1) xg = xp_divexact_up(xg, cg);
    xp_trim(xf);
    xp_trim(xg);

    BiPoly cc_poly = from_xp(XP{cc});

    XP hh;
    if (xp_deg(xf) == 0 || xp_deg(xg) == 0) {
        // both x-primitive; one has x-degree 0 hence is a unit
        hh = XP{UP{Int(1)}};
    } else if (proves_coprime(xf, xg)) {
        hh = XP{UP{Int(1)}};
    } else {
        XP a = std::move(xf), b = std::move(xg);
        if (xp_deg(a) < xp_deg(b)) std::swap(a, b);
        while (xp_deg(b) >= 0) {
            XP r = xp_prem(a, b);
            a = std::move(b);
            b = xp_pp(std::move(r));
        }
        hh = xp_pp(std::move(a));
    }
    BiPoly h = from_xp(hh);
    BiPoly result = primitive_part(cc_poly * h) * mono;
    if (result.leading().second.sign() < 0) result = -result;
    return result;
}

}  // namespace kt

#include "kt/metric.hpp"

#include <sstream>

#include "kt/expr_parser.hpp"

namespace kt {

namespace {

RatFunc det2(const RatFunc& a, const RatFunc& b, const RatFunc& c, const RatFunc& d) {
    return a * d - b * c;
}

// determinant of the 4x4 block metric: det(xy block) * det(phi-t block)
RatFunc metric_det(const Mat4& g) {
    return det2(g[0][0], g[0][1], g[0][1], g[1][1]) *
           det2(g[2][2], g[2][3], g[2][3], g[3][3]);
}

void collect_locus(std::vector<BiPoly>& locus, const BiPoly& p) {
    if (p.is_constant()) return;
    BiPoly q = primitive_part(p);
    if (q.leading().second.sign() < 0) q = -q;
    for (const auto& e : locus)
        if (e == q) return;
    locus.push_back(q);
}

}  // namespace

void MetricSpec::validate_and_finish() {
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (!(g[a][b] == g[b][a]))
                throw parse_error("metric not symmetric at (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    for (int a = 0; a < 2; ++a)
        for (int b = 2; b < 4; ++b)
            if (!g[a][b].is_zero())
                throw parse_error("metric mixes the (x,y) and (phi,t) sectors at (" +
                                  std::to_string(a) + "," + std::to_string(b) + ")");
    RatFunc det = metric_det(g);
    if (det.is_zero()) throw parse_error("metric is degenerate: det(g) = 0");
    bool is_static = g[2][3].is_zero();
    if (static_flag && !is_static)
        throw parse_error("metric declared static but has a dphi*dt cross term");
    static_flag = is_static;

    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b)
            if (!g[a][b].is_zero()) collect_locus(excluded_locus, g[a][b].den());
    collect_locus(excluded_locus, det.num());
    collect_locus(excluded_locus, det.den());
    // denominators of the inverse blocks are covered by det and component dens
}

bool MetricSpec::point_admissible(const Point& p) const {
    for (const auto& f : excluded_locus)
        if (f.eval(p).is_zero()) return false;
    return true;
}

Mat4 inverse(const MetricSpec& m) {
    RatFunc dxy = det2(m.g[0][0], m.g[0][1], m.g[0][1], m.g[1][1]);
    RatFunc dpt = det2(m.g[2][2], m.g[2][3], m.g[2][3], m.g[3][3]);
    if (dxy.is_zero() || dpt.is_zero()) throw parse_error("singular metric");
    Mat4 gi{};
    gi[0][0] = m.g[1][1] / dxy;
    gi[1][1] = m.g[0][0] / dxy;
    gi[0][1] = gi[1][0] = -(m.g[0][1] / dxy);
    gi[2][2] = m.g[3][3] / dpt;
    gi[3][3] = m.g[2][2] / dpt;
    gi[2][3] = gi[3][2] = -(m.g[2][3] / dpt);
    return gi;
}

MomPoly hamiltonian(const MetricSpec& m) {
    Mat4 gi = inverse(m);
    MomPoly h;
    for (int a = 0; a < 4; ++a) {
        for (int b = a; b < 4; ++b) {
            if (gi[a][b].is_zero()) continue;
            MExp e;
            e.e[a] += 1;
            e.e[b] += 1;
            RatFunc c = (a == b) ? gi[a][b] : gi[a][b] * RatFunc(Rat(2));
            h.add_term(e, c);
        }
    }
    return h;
}

std::array<std::array<std::array<RatFunc, 4>, 4>, 4> christoffel(const MetricSpec& m) {
    Mat4 gi = inverse(m);
    // dg[c][a][b] = d g_ab / d x^c, c in {0,1}; derivatives along phi,t vanish
    std::array<Mat4, 2> dg;
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                dg[c][a][b] = m.g[a][b].diff(c);
                dg[c][b][a] = dg[c][a][b];
            }
    auto d = [&](int a, int b, int c) -> RatFunc {
        // d g_ab / d x^c with ignorable directions flat
        if (c >= 2) return RatFunc();
        return dg[c][a][b];
    };
    std::array<std::array<std::array<RatFunc, 4>, 4>, 4> gamma{};
    Rat half(1, 2);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = b; c < 4; ++c) {
                RatFunc s;
                for (int e = 0; e < 4; ++e) {
                    if (gi[a][e].is_zero()) continue;
                    s += gi[a][e] * (d(e, b, c) + d(e, c, b) - d(b, c, e));
                }
                s = s * RatFunc(half);
                gamma[a][b][c] = s;
                gamma[a][c][b] = s;
            }
        }
    }
    return gamma;
}

Mat4 ricci(const MetricSpec& m) {
    auto gamma = christoffel(m);
    // precompute coordinate derivatives of the Christoffels we contract over
    auto dgamma = [&](int a, int b, int c, int w) -> RatFunc {
        if (w >= 2) return RatFunc();
        return gamma[a][b][c].diff(w);
    };
    Mat4 ric{};
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            RatFunc v;
            for (int a = 0; a < 4; ++a) {
                v += dgamma(a, i, j, a);
                v -= dgamma(a, a, i, j);
                for (int b = 0; b < 4; ++b) {
                    if (!gamma[a][a][b].is_zero() && !gamma[b][i][j].is_zero())
                        v += gamma[a][a][b] * gamma[b][i][j];
                    if (!gamma[a][i][b].is_zero() && !gamma[b][j][a].is_zero())
                        v -= gamma[a][i][b] * gamma[b][j][a];
                }
            }
            ric[i][j] = v;
            ric[j][i] = v;
        }
    }
    return ric;
}

// ---------------------------------------------------------------------------
// built-in catalog

namespace {

RatFunc rf(const std::string& s) { return parse_expression(s); }

MetricSpec make_flat_cyl() {
    MetricSpec m;
    m.name = "flat_cyl";
    m.g[0][0] = RatFunc(Rat(1));
    m.g[1][1] = RatFunc(Rat(1));
    m.g[2][2] = rf("x^2");
    m.g[3][3] = RatFunc(Rat(-1));
    m.static_flag = true;
    m.suggested_points = {{Rat(1, 2), Rat(2)}, {Rat(3), Rat(1, 3)}};
    m.validate_and_finish();
    return m;
}

MetricSpec make_darmois() {
    MetricSpec m;
    m.name = "darmois";
    RatFunc pref = rf("((x+1)/(x-1))^2");
    RatFunc body = rf("(x^2-y^2)*((x^2-1)/(x^2-y^2))^4");
    m.g[0][0] = pref * body / rf("x^2-1");
    m.g[1][1] = pref * body / rf("1-y^2");
    m.g[2][2] = pref * rf("(x^2-1)*(1-y^2)");
    m.g[3][3] = -rf("((x-1)/(x+1))^2");
    m.static_flag = true;
    m.params["delta"] = Rat(2);
    m.suggested_points = {{Rat(1, 2), Rat(2)}, {Rat(3), Rat(1, 3)}};
    m.validate_and_finish();
    return m;
}

MetricSpec make_cmetric() {
    MetricSpec m;
    m.name = "cmetric";
    // Hong-Teo form with alpha = m = 1/2, so 2 m alpha = 1/2:
    //   X = (1-x^2)(1+x/2), Y = (y^2-1)(1-y/2), conformal factor 4/(x+y)^2
    RatFunc conf = rf("4/((x+y)^2)");
    RatFunc X = rf("(1-x^2)*(1+x/2)");
    RatFunc Y = rf("(y^2-1)*(1-y/2)");
    m.g[0][0] = conf / X;
    m.g[1][1] = conf / Y;
    m.g[2][2] = conf * X;
    m.g[3][3] = -(conf * Y);
    m.static_flag = true;
    m.params["alpha"] = Rat(1, 2);
    m.params["m"] = Rat(1, 2);
    m.suggested_points = {{Rat(0), Rat(3, 2)}, {Rat(1, 3), Rat(7, 5)}};
    m.validate_and_finish();
    return m;
}

MetricSpec make_kerr_extreme() {
    MetricSpec m;
    m.name = "kerr_extreme";
    m.coords = {"r", "chi", "phi", "t"};
    // Boyer-Lindquist with a = 1, rationalized by chi = cos(theta):
    // sin^2 -> 1 - chi^2, dtheta^2 -> dchi^2/(1-chi^2). Here x = r, y = chi.
    RatFunc rho2 = rf("x^2+y^2");
    RatFunc Pa = rf("y^2*x^2 + x^4 - 2*y^2*x + y^2 + x^2 + 2*x");
    m.g[0][0] = rho2 / rf("x^2-2*x+1");
    m.g[1][1] = rho2 / rf("1-y^2");
    m.g[2][2] = Pa * rf("1-y^2") / rho2;
    m.g[2][3] = m.g[3][2] = -(rf("2*(1-y^2)*x") / rho2);
    m.g[3][3] = -(rf("x^2-2*x+y^2") / rho2);
    m.static_flag = false;
    m.params["a"] = Rat(1);
    // the paper's (2, pi/4) is irrational in chi; certify at (2, 1/2) instead
    m.suggested_points = {{Rat(2), Rat(1, 2)}, {Rat(3), Rat(1, 3)}};
    m.validate_and_finish();
    return m;
}

MetricSpec make_ts2() {
    MetricSpec m;
    m.name = "ts2";
    // Ernst-Perjes representation, delta = 2, kappa = 2, p = 3/5, q = 4/5
    Rat p(3, 5), q(4, 5), kappa(2);
    RatFunc P{p}, Q{q}, K{kappa};
    RatFunc x2m1 = rf("x^2-1"), omy2 = rf("1-y^2"), x2my2 = rf("x^2-y^2");
    RatFunc mu = P * P * x2m1 * x2m1 + Q * Q * omy2 * omy2;
    RatFunc nu = rf("4*x") * (P * rf("x^2") + rf("2*x") + P);
    RatFunc sig = RatFunc(Rat(2)) * P * Q * x2my2;
    RatFunc tau = RatFunc(Rat(-4)) * (Q / P) * omy2 * (P * rf("x") + RatFunc(Rat(1)));
    RatFunc Nf = mu * mu - x2m1 * omy2 * sig * sig;
    RatFunc Df = mu * mu + mu * nu - omy2 * (x2m1 * sig * sig - sig * tau);
    RatFunc f = Nf / Df;
    RatFunc e2g = Nf / (P.pow(4) * x2my2.pow(4));
    RatFunc omega = -(K * omy2 * (x2m1 * sig * nu + mu * tau)) / Nf;
    RatFunc K2f = K * K / f;
    m.g[0][0] = K2f * e2g * x2my2 / x2m1;
    m.g[1][1] = K2f * e2g * x2my2 / omy2;
    m.g[2][2] = K2f * x2m1 * omy2 - f * omega * omega;
    m.g[2][3] = m.g[3][2] = f * omega;
    m.g[3][3] = -f;
    m.static_flag = false;
    m.params["delta"] = Rat(2);
    m.params["kappa"] = kappa;
    m.params["p"] = p;
    m.params["q"] = q;
    m.suggested_points = {{Rat(1, 2), Rat(2)}, {Rat(1, 3), Rat(3)}};
    m.validate_and_finish();
    return m;
}

}  // namespace

const std::vector<std::string>& builtin_metric_names() {
    static const std::vector<std::string> names = {"ts2", "darmois", "cmetric",
                                                   "kerr_extreme", "flat_cyl"};
    return names;
}

MetricSpec builtin_metric(const std::string& name) {
    if (name == "flat_cyl") return make_flat_cyl();
    if (name == "darmois") return make_darmois();
    if (name == "cmetric") return make_cmetric();
    if (name == "kerr_extreme") return make_kerr_extreme();
    if (name == "ts2") return make_ts2();
    throw parse_error("unknown metric '" + name + "'");
}

// ---------------------------------------------------------------------------
// metric file format

MetricSpec parse_metric_file(const std::string& text) {
    MetricSpec m;
    m.name = "file";
    bool have_coords = false, have_static = false;
    bool declared_static = false;
    std::vector<std::string> exclude_exprs;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto err = [&](const std::string& msg) -> void {
        throw parse_error("metric file line " + std::to_string(lineno) + ": " + msg);
    };
    std::vector<std::tuple<int, int, std::string>> entries;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "coords") {
            for (auto& c : m.coords)
                if (!(ls >> c)) err("coords needs four labels");
            have_coords = true;
        } else if (word == "static") {
            std::string v;
            if (!(ls >> v) || (v != "true" && v != "false")) err("static needs true|false");
            declared_static = (v == "true");
            have_static = true;
        } else if (word == "exclude") {
            std::string rest;
            std::getline(ls, rest);
            exclude_exprs.push_back(rest);
        } else if (word.rfind("g[", 0) == 0) {
            int a, b;
            char c1, c2, c3, c4;
            std::istringstream ws(word.substr(1));
            if (!(ws >> c1 >> a >> c2 >> c3 >> b >> c4) || c1 != '[' || c2 != ']' ||
                c3 != '[' || c4 != ']' || a < 0 || a > 3 || b < 0 || b > 3)
                err("bad component index, expected g[i][j] with 0 <= i,j <= 3");
            std::string eq, rest;
            if (!(ls >> eq) || eq != "=") err("expected '=' after component");
            std::getline(ls, rest);
            entries.emplace_back(a, b, rest);
        } else {
            err("unknown directive '" + word + "'");
        }
    }
    lineno = 0;
    if (!have_coords) throw parse_error("metric file: missing coords line");
    if (!have_static) throw parse_error("metric file: missing static line");
    const std::string& xn = m.coords[0];
    const std::string& yn = m.coords[1];
    for (const auto& [a, b, expr] : entries) {
        RatFunc v = parse_expression(expr, xn, yn);
        if (!m.g[a][b].is_zero() && !(m.g[a][b] == v))
            throw parse_error("metric file: conflicting values for g[" + std::to_string(a) +
                              "][" + std::to_string(b) + "]");
        m.g[a][b] = v;
        m.g[b][a] = v;
    }
    for (const auto& ex : exclude_exprs) {
        RatFunc v = parse_expression(ex, xn, yn);
        if (!v.is_polynomial())
            throw parse_error("metric file: exclude entries must be polynomial");
        collect_locus(m.excluded_locus, v.num());
    }
    m.static_flag = declared_static;
    m.validate_and_finish();
    if (declared_static != m.static_flag)
        throw parse_error("metric file: static flag inconsistent with components");
    return m;
}

std::string to_metric_file(const MetricSpec& m) {
    std::ostringstream os;
    os << "coords";
    for (const auto& c : m.coords) os << " " << c;
    os << "\n";
    os << "static " << (m.static_flag ? "true" : "false") << "\n";
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b)
            if (!m.g[a][b].is_zero())
                os << "g[" << a << "][" << b
                   << "] = " << m.g[a][b].str(m.coords[0], m.coords[1]) << "\n";
    return os.str();
}

}  // namespace kt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kt/expr_parser.hpp"
#include "kt/metric.hpp"
#include "oracle.hpp"

using namespace kt;

namespace {
RatFunc rf(const std::string& s) { return parse_expression(s); }

bool is_zero_matrix(const Mat4& m) {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (!m[a][b].is_zero()) return false;
    return true;
}
}  // namespace

TEST_CASE("builtin components match the published forms") {
    MetricSpec zv = builtin_metric("darmois");
    CHECK(zv.g[2][2] == rf("((x+1)/(x-1))^2 * (x^2-1)*(1-y^2)"));
    CHECK(zv.static_flag);

    MetricSpec cm = builtin_metric("cmetric");
    CHECK(cm.g[0][0] == rf("1/( (1/4)*(x+y)^2 * (1-x^2)*(1+x/2) )"));
    CHECK(cm.static_flag);

    MetricSpec kerr = builtin_metric("kerr_extreme");
    CHECK(kerr.g[1][1] == rf("(x^2+y^2)/(1-y^2)"));
    CHECK_FALSE(kerr.static_flag);

    MetricSpec fl = builtin_metric("flat_cyl");
    CHECK(fl.g[2][2] == rf("x^2"));

    CHECK_FALSE(builtin_metric("ts2").static_flag);
    CHECK_THROWS_AS(builtin_metric("nope"), parse_error);
}

TEST_CASE("inverse: g * g^{-1} = identity for every catalog metric") {
    for (const auto& name : builtin_metric_names()) {
        MetricSpec m = builtin_metric(name);
        Mat4 gi = inverse(m);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                RatFunc acc;
                for (int c = 0; c < 4; ++c) acc += m.g[a][c] * gi[c][b];
                CHECK(acc == RatFunc(Rat(a == b ? 1 : 0)));
            }
        }
    }
}

TEST_CASE("inverse examples") {
    MetricSpec zv = builtin_metric("darmois");
    Mat4 gi = inverse(zv);
    CHECK(gi[3][3] == zv.g[3][3].inv());  // diagonal inversion
    MetricSpec fl = builtin_metric("flat_cyl");
    CHECK(inverse(fl)[2][2] == rf("1/(x^2)"));
    // Kerr (phi,t) block inverted exactly: check the 2x2 block identity
    MetricSpec kerr = builtin_metric("kerr_extreme");
    Mat4 ki = inverse(kerr);
    CHECK(kerr.g[2][2] * ki[2][2] + kerr.g[2][3] * ki[3][2] == RatFunc(Rat(1)));
    CHECK(kerr.g[2][2] * ki[2][3] + kerr.g[2][3] * ki[3][3] == RatFunc());
}

TEST_CASE("hamiltonians") {
    MetricSpec fl = builtin_metric("flat_cyl");
    MomPoly H = hamiltonian(fl);
    MomPoly expect;
    {
        MExp e;
        e.e = {2, 0, 0, 0};
        expect.add_term(e, RatFunc(Rat(1)));
        e.e = {0, 2, 0, 0};
        expect.add_term(e, RatFunc(Rat(1)));
        e.e = {0, 0, 2, 0};
        expect.add_term(e, rf("1/(x^2)"));
        e.e = {0, 0, 0, 2};
        expect.add_term(e, RatFunc(Rat(-1)));
    }
    CHECK(H == expect);

    MExp cross;
    cross.e = {0, 0, 1, 1};
    CHECK(hamiltonian(builtin_metric("darmois")).coeff(cross).is_zero());
    CHECK_FALSE(hamiltonian(builtin_metric("ts2")).coeff(cross).is_zero());
}

TEST_CASE("Ricci flatness of the cheap catalog metrics") {
    CHECK(is_zero_matrix(ricci(builtin_metric("flat_cyl"))));
    CHECK(is_zero_matrix(ricci(builtin_metric("darmois"))));
    CHECK(is_zero_matrix(ricci(builtin_metric("cmetric"))));
}

TEST_CASE("suggested points avoid the excluded locus") {
    for (const auto& name : builtin_metric_names()) {
        MetricSpec m = builtin_metric(name);
        REQUIRE(!m.suggested_points.empty());
        for (const auto& p : m.suggested_points) CHECK(m.point_admissible(p));
        // and the locus actually rejects singular points
        if (name == "darmois") CHECK_FALSE(m.point_admissible({Rat(1), Rat(0)}));
        if (name == "kerr_extreme") CHECK_FALSE(m.point_admissible({Rat(1), Rat(1, 2)}));
    }
}

TEST_CASE("metric file round trip") {
    for (const auto& name : {"flat_cyl", "darmois", "kerr_extreme"}) {
        MetricSpec m = builtin_metric(name);
        MetricSpec back = parse_metric_file(to_metric_file(m));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(back.g[a][b] == m.g[a][b]);
        CHECK(back.static_flag == m.static_flag);
        CHECK(back.coords == m.coords);
    }
}

TEST_CASE("metric file rejections") {
    CHECK_THROWS_AS(parse_metric_file("coords x y phi t\n"
                                      "static true\n"
                                      "g[0][0] = phi + 1\n"),
                    parse_error);  // component depending on an ignorable coordinate
    CHECK_THROWS_AS(parse_metric_file("coords x y phi t\nstatic true\n"
                                      "g[0][0] = 1\ng[1][1] = 1\ng[2][2] = x^2\n"
                                      "g[3][3] = 0-1\ng[0][2] = x\n"),
                    parse_error);  // sector mixing
    CHECK_THROWS_AS(parse_metric_file("coords x y phi t\nstatic true\n"
                                      "g[0][0] = 1\n"),
                    parse_error);  // degenerate
    CHECK_THROWS_AS(parse_metric_file("coords x y phi t\nstatic true\n"
                                      "g[0][0] = 1\ng[1][1] = 1\ng[2][2] = x^2\n"
                                      "g[3][3] = 0-1\ng[2][3] = x\n"),
                    parse_error);  // declared static but has a cross term
    CHECK_THROWS_AS(parse_metric_file("static true\ng[0][0] = 1\n"), parse_error);
}

TEST_CASE("file metric with renamed coordinates") {
    std::string text =
        "coords r chi phi t\n"
        "static false\n"
        "exclude r - 1\n"
        "g[0][0] = (r^2+chi^2)/(r^2-2*r+1)\n"
        "g[1][1] = (r^2+chi^2)/(1-chi^2)\n"
        "g[2][2] = (chi^2*r^2 + r^4 - 2*chi^2*r + chi^2 + r^2 + 2*r)*(1-chi^2)/(r^2+chi^2)\n"
        "g[2][3] = 0 - 2*(1-chi^2)*r/(r^2+chi^2)\n"
        "g[3][3] = 0 - (r^2-2*r+chi^2)/(r^2+chi^2)\n";
    MetricSpec m = parse_metric_file(text);
    MetricSpec kerr = builtin_metric("kerr_extreme");
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(m.g[a][b] == kerr.g[a][b]);
    CHECK_FALSE(m.point_admissible({Rat(1), Rat(1, 3)}));
}

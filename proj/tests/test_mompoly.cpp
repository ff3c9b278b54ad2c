#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kt/expr_parser.hpp"
#include "kt/metric.hpp"
#include "oracle.hpp"

using namespace kt;

namespace {

MomPoly mono(int a, int b, int c, int d, const RatFunc& f = RatFunc(Rat(1))) {
    MExp e;
    e.e = {a, b, c, d};
    return mom_monomial(e, f);
}

MomPoly flat_H() {
    return mono(2, 0, 0, 0) + mono(0, 2, 0, 0) +
           mono(0, 0, 2, 0, parse_expression("1/(x^2)")) + mono(0, 0, 0, 2, RatFunc(Rat(-1)));
}

}  // namespace

TEST_CASE("canonical pair and antisymmetry basics") {
    MomPoly x = mono(0, 0, 0, 0, RatFunc::variable(0));
    MomPoly px = mono(1, 0, 0, 0);
    CHECK(poisson(x, px) == mono(0, 0, 0, 0));  // {x, p_x} = 1
    CHECK(poisson(px, px).is_zero());
    MomPoly H = flat_H();
    CHECK(poisson(H, H).is_zero());
    // y is ignorable for the flat control metric
    CHECK(poisson(H, mono(0, 1, 0, 0)).is_zero());
}

TEST_CASE("bracket properties on randomized instances") {
    oracle::Rng rng(2024);
    for (int it = 0; it < 25; ++it) {
        MomPoly A = rng.mompoly(2, 3, 1);
        MomPoly B = rng.mompoly(2, 3, 1);
        MomPoly C = rng.mompoly(1, 2, 1);
        CHECK(poisson(A, B) == -poisson(B, A));
        CHECK(poisson(A * B, C) == A * poisson(B, C) + poisson(A, C) * B);
        MomPoly jac = poisson(A, poisson(B, C)) + poisson(B, poisson(C, A)) +
                      poisson(C, poisson(A, B));
        CHECK(jac.is_zero());
        MomPoly br = poisson(A, B);
        if (!br.is_zero() && !A.is_zero() && !B.is_zero())
            CHECK(br.degree() <= A.degree() + B.degree() - 1);
    }
}

TEST_CASE("parity projection") {
    MomPoly P = mono(2, 0, 0, 0) + mono(1, 0, 1, 0);
    CHECK(P.parity_project({0, PhiParity::any}) == mono(2, 0, 0, 0));
    CHECK(P.parity_project({1, PhiParity::any}) == mono(1, 0, 1, 0));
    oracle::Rng rng(321);
    for (int it = 0; it < 20; ++it) {
        MomPoly Q = rng.mompoly(3, 4, 1);
        CHECK(Q.parity_project({0, PhiParity::any}) + Q.parity_project({1, PhiParity::any}) ==
              Q);
    }
    for (const auto& name : builtin_metric_names()) {
        MetricSpec m = builtin_metric(name);
        MomPoly H = hamiltonian(m);
        CHECK(H.parity_project({0, PhiParity::any}) == H);
        if (m.static_flag) CHECK(H.parity_project({0, PhiParity::even}) == H);
    }
}

TEST_CASE("bracket of even H with pure-parity I has flipped parity") {
    MetricSpec kerr = builtin_metric("kerr_extreme");
    MomPoly H = hamiltonian(kerr);
    oracle::Rng rng(5150);
    for (int e = 0; e <= 1; ++e) {
        for (int it = 0; it < 10; ++it) {
            MomPoly I = rng.mompoly(3, 4, 1).parity_project({e, PhiParity::any});
            MomPoly br = poisson(H, I);
            CHECK(br.parity_project({1 - e, PhiParity::any}) == br);
        }
    }
}

TEST_CASE("coefficient indexing matches the exponent scheme") {
    MomPoly P = mono(1, 1, 0, 0);  // p_x p_y
    REQUIRE(P.terms().size() == 1);
    const MExp& e = P.terms().begin()->first;
    CHECK(e.deg_xy() == 2);   // i
    CHECK(e.e[1] == 1);       // j
    CHECK(e.e[2] == 0);       // k
}

TEST_CASE("bracket with degree-1 ansatz stays at total degree 2 on flat control") {
    MomPoly H = flat_H();
    oracle::Rng rng(88);
    MomPoly I = mono(1, 0, 0, 0, rng.ratfunc(1, 2)) + mono(0, 1, 0, 0, rng.ratfunc(1, 2));
    MomPoly br = poisson(H, I);
    for (const auto& [e, c] : br.terms()) CHECK(e.total() == 2);
}

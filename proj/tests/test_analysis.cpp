#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kt/analysis.hpp"
#include "oracle.hpp"

using namespace kt;

TEST_CASE("flat control: the translation integral is found at d=1") {
    MetricSpec m = builtin_metric("flat_cyl");
    BranchSpec b{1, 1, PhiParity::any, 1};
    BranchResult r = analyze_branch(m, b, {Rat(1, 2), Rat(2)}, 1);
    CHECK(r.extra_dim >= 1);  // p_y
    CHECK(r.counts.gauge_fixed_cols == 0);
    CHECK(r.upper_bound == r.nullity);
    CHECK(r.nullity == 1);
}

TEST_CASE("flat control: full analysis d=1 and d=2") {
    MetricSpec m = builtin_metric("flat_cyl");
    BoundReport rep1 = full_analysis(m, 1);
    CHECK(rep1.mode == AnalysisMode::static_split);
    CHECK(rep1.points_agree);
    CHECK(rep1.extra_candidates == 1);
    CHECK(rep1.verdict == "extra-candidates(1)");
    CHECK(rep1.total_upper_bound == trivials_count(1, 4) + 1);

    BoundReport rep2 = full_analysis(m, 2);
    CHECK(rep2.points_agree);
    CHECK(rep2.extra_candidates == 3);  // p_y^2, p_y p_phi, p_y p_t
    CHECK(rep2.total_upper_bound == trivials_count(2, 4) + 3);

    // two-parity mode agrees with the refined split
    BoundReport rep2b = full_analysis(m, 2, {}, AnalysisMode::two_parity);
    CHECK(rep2b.extra_candidates == 3);
    CHECK(rep2b.total_upper_bound == rep2.total_upper_bound);
}

TEST_CASE("accounting identity and report fields") {
    MetricSpec m = builtin_metric("kerr_extreme");
    BranchSpec b{2, 0, PhiParity::any, 1};
    BranchResult r = analyze_branch(m, b, {Rat(2), Rat(1, 2)}, 2);
    CHECK((long long)(r.counts.cols_after_elim + r.counts.eliminated_cols +
                      r.counts.gauge_fixed_cols) == r.counts.nvars);
    CHECK(r.upper_bound == r.nullity + r.counts.gauge_fixed_cols);
    CHECK(r.rank.rank + r.nullity == r.counts.cols_after_elim);
    CHECK(r.extra_dim == r.nullity - r.trivial_span_dim);
    // Kerr d=2 even branch: Carter constant
    CHECK(r.counts.gauge_fixed_cols == 4);
    CHECK(r.upper_bound == 5);
    CHECK(r.extra_dim == 1);
}

TEST_CASE("gauge off: nullity counts the trivial span too") {
    MetricSpec m = builtin_metric("kerr_extreme");
    BranchSpec b{2, 0, PhiParity::any, 1};
    PipelineOptions opts;
    opts.gauge = false;
    BranchResult r = analyze_branch(m, b, {Rat(2), Rat(1, 2)}, 2, opts);
    CHECK(r.counts.gauge_fixed_cols == 0);
    CHECK(r.trivial_span_dim == 4);
    CHECK(r.nullity == 5);
    CHECK(r.extra_dim == 1);
    CHECK(r.upper_bound == 5);
}

TEST_CASE("kerr full analysis at d=1: bounds 2 and 0") {
    MetricSpec m = builtin_metric("kerr_extreme");
    BoundReport rep = full_analysis(m, 1);
    CHECK(rep.mode == AnalysisMode::two_parity);
    REQUIRE(rep.branches.size() == 2);
    CHECK(rep.branches[0].results[0].upper_bound == 2);
    CHECK(rep.branches[1].results[0].upper_bound == 0);
    CHECK(rep.points_agree);
    CHECK(rep.verdict == "no-additional-KT");
    CHECK(rep.total_upper_bound == 2);
}

TEST_CASE("parity completeness on the flat control (d <= 3)") {
    // kernel of the unsplit system = sum over the four static subsystems
    MetricSpec m = builtin_metric("flat_cyl");
    Point P{Rat(1, 2), Rat(2)};
    PipelineOptions opts;
    opts.gauge = false;
    for (int d = 1; d <= 3; ++d) {
        size_t full = 0;
        for (int e = 0; e <= 1; ++e)
            full += analyze_branch(m, {d, e, PhiParity::any, 1}, P, d, opts).nullity;
        size_t split = 0;
        for (const auto& b : static_split_plan(d))
            split += (size_t)b.multiplicity * analyze_branch(m, b, P, b.d, opts).nullity;
        CHECK(full == split);
    }
}

TEST_CASE("deterministic reports") {
    MetricSpec m = builtin_metric("flat_cyl");
    PipelineOptions opts;
    opts.seed = 13;
    std::string a = to_json(full_analysis(m, 1, opts));
    std::string b = to_json(full_analysis(m, 1, opts));
    CHECK(a == b);
    CHECK(a.find("verdict") != std::string::npos);
    CHECK(a.find("trivial_span_dim") != std::string::npos);
    opts.seed = 14;
    std::string c = to_json(full_analysis(m, 1, opts));
    CHECK(a != c);  // the drawn second point differs
}

TEST_CASE("draw_admissible_point avoids the locus and given points") {
    MetricSpec m = builtin_metric("darmois");
    Point p1 = m.suggested_points.front();
    for (unsigned seed = 0; seed < 5; ++seed) {
        Point p = draw_admissible_point(m, seed, {p1});
        CHECK(m.point_admissible(p));
        CHECK(!(p.first == p1.first && p.second == p1.second));
    }
}

TEST_CASE("inadmissible point is rejected up front") {
    MetricSpec m = builtin_metric("darmois");
    CHECK_THROWS_AS(analyze_branch(m, {1, 1, PhiParity::any, 1}, {Rat(1), Rat(0)}, 1),
                    point_error);
}

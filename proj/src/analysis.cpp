#include "kt/analysis.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <random>

namespace kt {

namespace {

// dense exact rank of a small list of vectors (trivial-span bookkeeping)
size_t dense_rank(std::vector<std::vector<Rat>> vecs) {
    size_t rank = 0;
    size_t ncols = vecs.empty() ? 0 : vecs[0].size();
    size_t row = 0;
    for (size_t c = 0; c < ncols && row < vecs.size(); ++c) {
        size_t piv = SIZE_MAX;
        for (size_t r = row; r < vecs.size(); ++r)
            if (!vecs[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv == SIZE_MAX) continue;
        std::swap(vecs[row], vecs[piv]);
        for (size_t r = 0; r < vecs.size(); ++r) {
            if (r == row || vecs[r][c].is_zero()) continue;
            Rat f = vecs[r][c] / vecs[row][c];
            for (size_t cc = c; cc < ncols; ++cc)
                if (!vecs[row][cc].is_zero()) vecs[r][cc] -= f * vecs[row][cc];
        }
        ++row;
        ++rank;
    }
    return rank;
}

// basis of { lambda : sum_a lambda_a jets[a] vanishes on the given columns }
std::vector<std::vector<Rat>> combo_kernel(const std::vector<std::vector<Rat>>& jets,
                                           const std::vector<uint32_t>& cols) {
    size_t T = jets.size();
    // K: |cols| x T, kernel over lambda
    std::vector<std::vector<Rat>> K(cols.size(), std::vector<Rat>(T, Rat(0)));
    for (size_t r = 0; r < cols.size(); ++r)
        for (size_t a = 0; a < T; ++a) K[r][a] = jets[a][cols[r]];
    // dense elimination, track pivot columns
    std::vector<char> is_pivot(T, 0);
    size_t row = 0;
    std::vector<size_t> pivot_col_of_row;
    for (size_t c = 0; c < T && row < K.size(); ++c) {
        size_t piv = SIZE_MAX;
        for (size_t r = row; r < K.size(); ++r)
            if (!K[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv == SIZE_MAX) continue;
        std::swap(K[row], K[piv]);
        for (size_t r = 0; r < K.size(); ++r) {
            if (r == row || K[r][c].is_zero()) continue;
            Rat f = K[r][c] / K[row][c];
            for (size_t cc = 0; cc < T; ++cc)
                if (!K[row][cc].is_zero()) K[r][cc] -= f * K[row][cc];
        }
        is_pivot[c] = 1;
        pivot_col_of_row.push_back(c);
        ++row;
    }
    std::vector<std::vector<Rat>> basis;
    for (size_t f = 0; f < T; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> lambda(T, Rat(0));
        lambda[f] = Rat(1);
        for (size_t r = pivot_col_of_row.size(); r-- > 0;) {
            size_t pc = pivot_col_of_row[r];
            Rat acc(0);
            for (size_t c = 0; c < T; ++c)
                if (c != pc && !K[r][c].is_zero() && !lambda[c].is_zero())
                    acc += K[r][c] * lambda[c];
            lambda[pc] = -(acc / K[r][pc]);
        }
        basis.push_back(std::move(lambda));
    }
    return basis;
}

}  // namespace

BranchResult analyze_branch(const MetricSpec& metric, const BranchSpec& branch,
                            const Point& point, int M, const PipelineOptions& opts) {
    if (!metric.point_admissible(point))
        throw point_error("reference point " + point_str(point) +
                          " lies on the excluded locus of " + metric.name);
    if (branch.phi == PhiParity::even && !metric.static_flag)
        throw internal_error("phi-even branch requires a static metric");

    MomPoly H = hamiltonian(metric);
    EquationSet eqs = equations(H, branch);
    ProlongedSystem sys = prolong(std::move(eqs), M);

    BranchResult out;
    out.branch = branch;
    out.point = point;
    out.M = M;
    out.counts.meqns = meqns(branch, M);
    out.counts.nvars = nvars(branch, M);

    PointSystem ps = evaluate(sys, point);
    out.counts.rows_evaluated_nonzero = ps.rows.size();
    out.counts.zero_rows_dropped = ps.zero_rows_dropped;

    std::vector<MomPoly> fam = trivial_family(H, branch.d, branch);
    std::vector<std::vector<Rat>> fam_jets;
    fam_jets.reserve(fam.size());
    for (const MomPoly& t : fam)
        fam_jets.push_back(point_jet(t, branch.d, sys.index(), point, M));

    if (opts.gauge) {
        gauge_fix(ps, fam_jets);
        if (ps.gauge_cols.size() != fam.size())
            throw nongeneric_error(
                "non-generic point suspected at " + point_str(point) +
                ": trivial-family jets are dependent (" +
                std::to_string(ps.gauge_cols.size()) + " of " +
                std::to_string(fam.size()) + " independent)");
    }
    out.counts.gauge_fixed_cols = ps.gauge_cols.size();

    eliminate(ps);
    out.counts.eliminated_cols = ps.eliminated.size();
    out.counts.rows_after_elim = ps.rows.size();
    out.counts.cols_after_elim = ps.n_active_cols();

    IntMatrixResult im = to_int_matrix(ps);
    if (!opts.dump_matrix_path.empty()) {
        std::ofstream f(opts.dump_matrix_path);
        im.matrix.write_triplets(f);
    }
    if (im.matrix.ncols != out.counts.cols_after_elim)
        throw internal_error("column accounting mismatch");
    if ((long long)(out.counts.cols_after_elim + out.counts.eliminated_cols +
                    out.counts.gauge_fixed_cols) != out.counts.nvars)
        throw internal_error("nvars != active + eliminated + gauge-fixed columns");

    KernelResult kr = certify_rank(im.matrix, opts.seed, opts.force_exact);
    out.rank = kr.cert;
    out.nullity = im.matrix.ncols - kr.cert.rank;
    if (kr.cert.kernel_dim != out.nullity)
        throw internal_error("rank + kernel_dim != ncols");

    // lift kernel vectors through the substitution log and verify against the
    // originally evaluated system
    for (const auto& v : kr.basis) {
        std::vector<Rat> full = lift_solution(ps, im.col_map, v);
        if (!satisfies_original(ps, full))
            throw internal_error("lifted kernel vector violates the evaluated system");
    }

    // trivial span remaining after gauge fixing, projected to the final columns
    std::vector<std::vector<Rat>> combos = combo_kernel(fam_jets, ps.gauge_cols);
    std::vector<std::vector<Rat>> remaining;
    for (const auto& lambda : combos) {
        std::vector<Rat> w(im.col_map.size(), Rat(0));
        for (size_t a = 0; a < fam_jets.size(); ++a) {
            if (lambda[a].is_zero()) continue;
            for (size_t n = 0; n < im.col_map.size(); ++n)
                w[n] += lambda[a] * fam_jets[a][im.col_map[n]];
        }
        // exact check: the projected trivial combination lies in the kernel
        for (const auto& row : im.matrix.rows) {
            Rat acc(0);
            for (const auto& [c, val] : row)
                if (!w[c].is_zero()) acc += Rat(val) * w[c];
            if (!acc.is_zero())
                throw internal_error("trivial combination not in the reduced kernel");
        }
        remaining.push_back(std::move(w));
    }
    out.trivial_span_dim = dense_rank(std::move(remaining));
    if (opts.gauge && out.trivial_span_dim != 0)
        throw internal_error("gauge fixing left a nonzero trivial span");

    if (out.nullity < out.trivial_span_dim)
        throw internal_error("nullity below trivial span: non-generic point or fault");
    out.extra_dim = out.nullity - out.trivial_span_dim;
    out.upper_bound = out.nullity + out.counts.gauge_fixed_cols;
    return out;
}

Point draw_admissible_point(const MetricSpec& metric, unsigned seed,
                            const std::vector<Point>& avoid) {
    std::mt19937_64 rng(0x9d07ull * (seed + 1));
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 8);
    for (int tries = 0; tries < 4096; ++tries) {
        Rat x(num(rng), den(rng));
        Rat y(num(rng), den(rng));
        Point p{x, y};
        if (!metric.point_admissible(p)) continue;
        bool clash = false;
        for (const auto& q : avoid)
            if (q.first == p.first && q.second == p.second) clash = true;
        if (clash) continue;
        return p;
    }
    throw point_error("could not draw an admissible random point for " + metric.name);
}

std::string mode_name(AnalysisMode m) {
    switch (m) {
        case AnalysisMode::two_parity: return "two-parity";
        case AnalysisMode::static_split: return "static-split";
        case AnalysisMode::single_branch: return "single-branch";
    }
    return "?";
}

BoundReport full_analysis(const MetricSpec& metric, int d, const PipelineOptions& opts,
                          std::optional<AnalysisMode> mode_override,
                          std::optional<Point> point_override) {
    BoundReport rep;
    rep.metric_name = metric.name;
    rep.params = metric.params;
    rep.valence = d;
    rep.seed = opts.seed;
    rep.mode = mode_override.value_or(metric.static_flag ? AnalysisMode::static_split
                                                         : AnalysisMode::two_parity);
    if (rep.mode == AnalysisMode::static_split && !metric.static_flag)
        throw parse_error("static-split mode requires a static metric");

    std::vector<BranchSpec> branches;
    if (rep.mode == AnalysisMode::static_split) {
        branches = static_split_plan(d);
    } else {
        branches.push_back({d, 0, PhiParity::any, 1});
        branches.push_back({d, 1, PhiParity::any, 1});
    }

    Point p1 = point_override.value_or(
        metric.suggested_points.empty() ? draw_admissible_point(metric, opts.seed, {})
                                        : metric.suggested_points.front());
    if (!metric.point_admissible(p1))
        throw point_error("reference point " + point_str(p1) + " not admissible");
    Point p2 = draw_admissible_point(metric, opts.seed, {p1});

    struct Task {
        size_t branch_idx;
        Point point;
    };
    std::vector<Task> tasks;
    for (size_t b = 0; b < branches.size(); ++b) {
        tasks.push_back({b, p1});
        tasks.push_back({b, p2});
    }
    std::vector<std::future<BranchResult>> futs;
    futs.reserve(tasks.size());
    for (const Task& t : tasks) {
        futs.push_back(std::async(std::launch::async, [&, t] {
            return analyze_branch(metric, branches[t.branch_idx], t.point,
                                  branches[t.branch_idx].d, opts);
        }));
    }
    std::vector<BranchResult> results(tasks.size());
    for (size_t n = 0; n < futs.size(); ++n) results[n] = futs[n].get();

    rep.points_agree = true;
    for (size_t b = 0; b < branches.size(); ++b) {
        BranchRun run;
        run.branch = branches[b];
        run.results = {results[2 * b], results[2 * b + 1]};
        run.agreed = (run.results[0].nullity == run.results[1].nullity) &&
                     (run.results[0].upper_bound == run.results[1].upper_bound);
        if (!run.agreed) rep.points_agree = false;
        // rank can only drop at special points, so report the larger nullity
        const BranchResult& rb = (run.results[0].nullity >= run.results[1].nullity)
                                     ? run.results[0]
                                     : run.results[1];
        rep.total_upper_bound += (long long)branches[b].multiplicity * rb.upper_bound;
        rep.extra_candidates += (long long)branches[b].multiplicity * rb.extra_dim;
        rep.branches.push_back(std::move(run));
    }
    rep.trivials_expected = trivials_count(d, 4);
    if (!rep.points_agree) {
        rep.verdict = "inconclusive";
    } else if (rep.extra_candidates == 0) {
        if (rep.total_upper_bound != rep.trivials_expected)
            throw internal_error("bound equals trivials per branch but not in total");
        rep.verdict = "no-additional-KT";
    } else {
        rep.verdict = "extra-candidates(" + std::to_string(rep.extra_candidates) + ")";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using json = nlohmann::ordered_json;

json branch_json(const BranchSpec& b) {
    return json{{"d", b.d},
                {"e", b.e},
                {"phi_parity", b.phi == PhiParity::even ? "even" : "any"},
                {"multiplicity", b.multiplicity}};
}

json result_json(const BranchResult& r) {
    json primes = json::array();
    for (uint64_t p : r.rank.primes_used) primes.push_back(p);
    return json{
        {"branch", branch_json(r.branch)},
        {"point", {r.point.first.str(), r.point.second.str()}},
        {"prolongation_order", r.M},
        {"counts",
         {{"meqns", r.counts.meqns},
          {"nvars", r.counts.nvars},
          {"rows_evaluated_nonzero", r.counts.rows_evaluated_nonzero},
          {"zero_rows_dropped", r.counts.zero_rows_dropped},
          {"rows_after_elim", r.counts.rows_after_elim},
          {"cols_after_elim", r.counts.cols_after_elim},
          {"eliminated_cols", r.counts.eliminated_cols},
          {"gauge_fixed_cols", r.counts.gauge_fixed_cols}}},
        {"rank",
         {{"rank", r.rank.rank},
          {"method", rank_method_name(r.rank.method)},
          {"primes_used", primes},
          {"kernel_dim", r.rank.kernel_dim},
          {"kernel_verified", r.rank.kernel_verified}}},
        {"nullity", r.nullity},
        {"trivial_span_dim", r.trivial_span_dim},
        {"upper_bound", r.upper_bound},
        {"extra_dim", r.extra_dim}};
}

}  // namespace

std::string to_json(const BranchResult& r) { return result_json(r).dump(2); }

std::string to_json(const BoundReport& r) {
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v.str();
    json branches = json::array();
    for (const auto& run : r.branches) {
        json results = json::array();
        for (const auto& res : run.results) results.push_back(result_json(res));
        branches.push_back(json{{"branch", branch_json(run.branch)},
                                {"results", results},
                                {"agreed", run.agreed}});
    }
    json j{{"metric", {{"name", r.metric_name}, {"params", params}}},
           {"valence", r.valence},
           {"mode", mode_name(r.mode)},
           {"seed", r.seed},
           {"branches", branches},
           {"total_upper_bound", r.total_upper_bound},
           {"trivials_expected", r.trivials_expected},
           {"extra_candidates", r.extra_candidates},
           {"points_agree", r.points_agree},
           {"verdict", r.verdict}};
    return j.dump(2);
}

}  // namespace kt

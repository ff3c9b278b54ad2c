// ktbound: certify existence or nonexistence of nontrivial Killing tensors
// for stationary axially symmetric metrics by exact linear algebra.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "kt/analysis.hpp"

namespace {

enum ExitCode {
    exit_ok = 0,
    exit_usage = 2,
    exit_metric = 3,
    exit_point = 4,
    exit_nongeneric = 5,
    exit_internal = 6,
};

kt::Point parse_point(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw kt::parse_error("--point expects r1,r2 with exact rationals like 1/2,2");
    return {kt::Rat::from_string(s.substr(0, comma)),
            kt::Rat::from_string(s.substr(comma + 1))};
}

kt::MetricSpec load_metric(const std::string& name, const std::string& file) {
    if (!name.empty()) return kt::builtin_metric(name);
    std::ifstream f(file);
    if (!f) throw kt::parse_error("cannot open metric file " + file);
    std::string text((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
    return kt::parse_metric_file(text);
}

void write_or_print(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body << "\n";
    } else {
        std::ofstream f(path);
        if (!f) throw kt::parse_error("cannot write report to " + path);
        f << body << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Killing tensor bound certification"};
    app.require_subcommand(1);

    // counts: index range sizes for one branch
    auto* counts = app.add_subcommand("counts", "print meqns/nvars for a branch");
    int c_d = 0, c_e = 0, c_M = -1;
    std::string c_phi = "any";
    counts->add_option("--valence", c_d, "valence d")->required();
    counts->add_option("--parity", c_e, "parity e in {0,1}")->check(CLI::Range(0, 1));
    counts->add_option("--phi-parity", c_phi, "even|any")
        ->check(CLI::IsMember({"even", "any"}));
    counts->add_option("--prolong", c_M, "prolongation order M (default d)");

    auto* an = app.add_subcommand("analyze", "run the prolongation-projection pipeline");
    std::string a_metric, a_file, a_mode = "auto", a_point, a_report, a_dump;
    std::string a_phi = "any";
    int a_d = 0, a_e = -1, a_M = -1;
    unsigned a_seed = 0;
    bool a_exact = false, a_nogauge = false;
    an->add_option("--metric", a_metric, "builtin metric name");
    an->add_option("--metric-file", a_file, "metric file path");
    an->add_option("--valence", a_d, "valence d")->required();
    an->add_option("--mode", a_mode, "two-parity|static-split|single-branch|auto")
        ->check(CLI::IsMember({"two-parity", "static-split", "single-branch", "auto"}));
    an->add_option("--parity", a_e, "single-branch parity e")->check(CLI::Range(0, 1));
    an->add_option("--phi-parity", a_phi, "single-branch p_phi parity: even|any")
        ->check(CLI::IsMember({"even", "any"}));
    an->add_option("--point", a_point, "reference point r1,r2 (exact rationals)");
    an->add_option("--prolong", a_M, "prolongation order M (default d)");
    an->add_option("--seed", a_seed, "seed for the second point and the primes");
    an->add_flag("--exact", a_exact, "force the exact elimination rank path");
    an->add_flag("--no-gauge", a_nogauge, "skip gauge fixing against the trivial family");
    an->add_option("--report", a_report, "write the JSON report here (default stdout)");
    an->add_option("--dump-matrix", a_dump, "write the reduced integer matrix (triplets)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (counts->parsed()) {
            if (c_M < 0) c_M = c_d;
            kt::BranchSpec b{c_d, c_e,
                             c_phi == "even" ? kt::PhiParity::even : kt::PhiParity::any, 1};
            std::cout << kt::meqns(b, c_M) << "/" << kt::nvars(b, c_M) << "\n";
            return exit_ok;
        }

        if (a_metric.empty() == a_file.empty())
            throw kt::parse_error("exactly one of --metric / --metric-file is required");
        kt::MetricSpec metric = load_metric(a_metric, a_file);

        kt::PipelineOptions opts;
        opts.seed = a_seed;
        opts.force_exact = a_exact;
        opts.gauge = !a_nogauge;
        opts.dump_matrix_path = a_dump;

        std::optional<kt::Point> point;
        if (!a_point.empty()) point = parse_point(a_point);

        auto t0 = std::chrono::steady_clock::now();
        int code = exit_ok;
        if (a_mode == "single-branch") {
            if (a_e < 0)
                throw kt::parse_error("single-branch mode requires --parity");
            kt::BranchSpec b{a_d, a_e,
                             a_phi == "even" ? kt::PhiParity::even : kt::PhiParity::any, 1};
            kt::Point p = point ? *point
                                : (metric.suggested_points.empty()
                                       ? kt::draw_admissible_point(metric, a_seed, {})
                                       : metric.suggested_points.front());
            int M = a_M >= 0 ? a_M : a_d;
            kt::BranchResult r = kt::analyze_branch(metric, b, p, M, opts);
            write_or_print(a_report, kt::to_json(r));
        } else {
            std::optional<kt::AnalysisMode> mode;
            if (a_mode == "two-parity") mode = kt::AnalysisMode::two_parity;
            if (a_mode == "static-split") mode = kt::AnalysisMode::static_split;
            kt::BoundReport rep = kt::full_analysis(metric, a_d, opts, mode, point);
            write_or_print(a_report, kt::to_json(rep));
            if (rep.verdict == "inconclusive") code = exit_nongeneric;
        }
        auto t1 = std::chrono::steady_clock::now();
        std::cerr << "[time] "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                  << " ms\n";
        return code;
    } catch (const kt::nongeneric_error& e) {
        std::cerr << "non-generic point: " << e.what() << "\n";
        return exit_nongeneric;
    } catch (const kt::point_error& e) {
        std::cerr << "point error: " << e.what() << "\n";
        return exit_point;
    } catch (const kt::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_metric;
    } catch (const kt::internal_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
}

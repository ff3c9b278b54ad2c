#pragma once

#include <optional>

#include "kt/prolong.hpp"

namespace kt {

/// Raised when evidence of a non-generic reference point shows up (dependent
/// trivial jets, disagreeing nullities). Always surfaced, never swallowed.
struct nongeneric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelineOptions {
    bool gauge = true;         // Algorithm step (ii) second half
    bool force_exact = false;  // skip the modular full-rank shortcut
    unsigned seed = 0;
    std::string dump_matrix_path;  // triplet dump of the reduced integer matrix
};

struct BranchCounts {
    long long meqns = 0;
    long long nvars = 0;
    size_t rows_evaluated_nonzero = 0;  // rows surviving point evaluation
    size_t zero_rows_dropped = 0;       // identically zero at the point
    size_t rows_after_elim = 0;
    size_t cols_after_elim = 0;
    size_t eliminated_cols = 0;
    size_t gauge_fixed_cols = 0;
};

struct BranchResult {
    BranchSpec branch;
    Point point;
    int M = 0;
    BranchCounts counts;
    RankCertificate rank;
    size_t nullity = 0;
    size_t trivial_span_dim = 0;  // trivial span remaining after gauge fixing
    size_t upper_bound = 0;       // nullity + gauge-fixed columns
    size_t extra_dim = 0;         // nullity - trivial_span_dim
};

enum class AnalysisMode { two_parity, static_split, single_branch };

struct BranchRun {
    BranchSpec branch;  // multiplicity included
    std::vector<BranchResult> results;  // one per reference point
    bool agreed = true;
};

struct BoundReport {
    std::string metric_name;
    std::map<std::string, Rat> params;
    int valence = 0;
    AnalysisMode mode = AnalysisMode::two_parity;
    unsigned seed = 0;
    std::vector<BranchRun> branches;
    long long total_upper_bound = 0;
    long long trivials_expected = 0;
    long long extra_candidates = 0;
    bool points_agree = true;
    std::string verdict;  // no-additional-KT | extra-candidates(n) | inconclusive
};

/// Full pipeline for one branch at one point: equations, prolong(M),
/// evaluate, gauge fix, eliminate, integer matrix, certified rank/kernel,
/// exact bookkeeping. Kernel vectors are lifted through the substitution log
/// and checked against the original evaluated system.
BranchResult analyze_branch(const MetricSpec& metric, const BranchSpec& branch,
                            const Point& point, int M, const PipelineOptions& opts = {});

/// Draw an admissible rational point of small height, deterministically from
/// the seed; avoids the excluded locus and the given points.
Point draw_admissible_point(const MetricSpec& metric, unsigned seed,
                            const std::vector<Point>& avoid);

/// Two-parity or static-split analysis at the suggested point plus one
/// pseudorandom admissible point. Disagreement between the points is reported
/// as an inconclusive verdict, never silently.
BoundReport full_analysis(const MetricSpec& metric, int d, const PipelineOptions& opts = {},
                          std::optional<AnalysisMode> mode_override = std::nullopt,
                          std::optional<Point> point_override = std::nullopt);

std::string mode_name(AnalysisMode m);

/// Deterministic JSON rendering of reports (stable key order, exact rationals
/// as strings). Timings never enter the report.
std::string to_json(const BranchResult& r);
std::string to_json(const BoundReport& r);

}  // namespace kt

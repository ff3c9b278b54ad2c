#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kt/mompoly.hpp"

namespace kt {

using Mat4 = std::array<std::array<RatFunc, 4>, 4>;

/// Stationary axially symmetric metric in coordinates (x, y, phi, t), the
/// first two non-ignorable. Components are exact rational functions of
/// (x, y); the (x,y) and (phi,t) sectors must not mix, so the Hamiltonian
/// is automatically even in (p_x, p_y).
struct MetricSpec {
    std::string name;
    std::array<std::string, 4> coords{"x", "y", "phi", "t"};
    Mat4 g{};
    bool static_flag = false;
    std::vector<BiPoly> excluded_locus;
    std::vector<Point> suggested_points;
    std::map<std::string, Rat> params;

    /// Checks symmetry, block structure, nondegeneracy and the static flag;
    /// fills excluded_locus with the denominator/determinant factors that
    /// reference points must avoid. Throws parse_error on violation.
    void validate_and_finish();

    bool point_admissible(const Point& p) const;
};

/// Built-in catalog: ts2, darmois, cmetric, kerr_extreme, flat_cyl.
MetricSpec builtin_metric(const std::string& name);
const std::vector<std::string>& builtin_metric_names();

/// Exact inverse metric; throws if det(g) = 0.
Mat4 inverse(const MetricSpec& m);

/// H = g^{ij} p_i p_j as a polynomial in the momenta.
MomPoly hamiltonian(const MetricSpec& m);

/// Christoffel symbols of the Levi-Civita connection, Gamma[a][b][c] with
/// b <= c stored (symmetric in the lower pair).
std::array<std::array<std::array<RatFunc, 4>, 4>, 4> christoffel(const MetricSpec& m);

/// Ricci tensor, exact. Identically zero for every vacuum catalog metric.
Mat4 ricci(const MetricSpec& m);

/// Plain-text metric file format. Line oriented:
///   coords x y phi t
///   static true|false
///   exclude <polynomial>           (optional, repeatable)
///   g[i][j] = <expression>         (0-based, upper triangle; rest zero)
/// Blank lines and '#' comments are ignored.
MetricSpec parse_metric_file(const std::string& text);
std::string to_metric_file(const MetricSpec& m);

}  // namespace kt

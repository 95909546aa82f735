#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "sepvol/precision.hpp"

namespace sepvol::nets {

// Row of a covering table: m points on S^2 with angular covering radius
// epsilon (degrees); delta = 2 sin(epsilon/2) is the chordal radius.
struct NetTableRow {
  long m = 0;
  double epsilon_degrees = 0.0;
  double delta = 0.0;

  // Rows with delta >= sqrt(2) cannot feed the convex-hull lemma.
  bool usable() const;
};

// Covering-table CSV with header `m,epsilon_degrees`; returns rows sorted
// by m.  Malformed rows raise with the line number; epsilon outside
// (0, 180) degrees is a domain error.
std::vector<NetTableRow> load_net_table(const std::string& path);

// Rows bundled with the library (written next to the given path by tests
// or fetched via bundled_net_table()).
std::vector<NetTableRow> bundled_net_table();

enum class NetMethod { icosahedral_subdivision, fibonacci, user };

// Finite subset of S^2 with a certified chordal covering radius.
struct SphericalNet {
  std::vector<Eigen::Vector3d> points;
  double delta = 0.0;
  bool certified = false;
  NetMethod method = NetMethod::user;

  void validate_points(double tol = 1e-12) const;
};

struct CoverResult {
  bool certified = false;
  double worst_gap = 0.0;  // max over the test grid of min chordal distance
};

// Grid certification: true iff every point of a test grid with guaranteed
// chordal spacing h is within delta - h of some net point, so that the
// whole sphere is covered at radius delta.  Exact closed-form covering radii
// override the grid for the regular tetrahedron and icosahedron.
// grid_spacing defaults to delta/16 and must be at most delta/8.
CoverResult certify_covering(const std::vector<Eigen::Vector3d>& points,
                             double delta, double grid_spacing = 0.0);

// Recognizes the regular tetrahedron / icosahedron up to rotation and
// returns the exact chordal covering radius.
std::optional<double> exact_covering_radius(
    const std::vector<Eigen::Vector3d>& points);

// Builds a net with certified covering radius <= target_delta.
SphericalNet generate_net(double target_delta, NetMethod method);

// Icosahedral subdivision at a fixed level: 10 * 4^level + 2 points.
std::vector<Eigen::Vector3d> icosphere(int level);

std::vector<Eigen::Vector3d> fibonacci_points(long m);

// conv(net) contains the centered ball of radius 1 - delta^2/2.  Returns the
// analytic radius after checking empirically that the support function
// min over a fine direction grid is at least that value.  Requires a
// certified net.
double conv_inradius_bound(const SphericalNet& net);

// R sqrt(2 log #F): bound for the Gaussian expectation of the maximum of
// #F linear functionals of norm <= R.
double gaussian_max_bound(double radius, long cardinality);

// (1 - delta^2/2)^{-N} * sqrt(2 log(2 m^N)): the tensorized net bound for
// the Gaussian maximum over the balanced separable extreme points.
Real tensor_net_bound(int n_qubits, long m, double delta,
                      PrecisionContext ctx = PrecisionContext());

enum class DeltaModel { cap_16, table_5 };

struct DeltaOptimum {
  double delta_star = 0.0;
  double bound = 0.0;
  double implied_m = 0.0;  // K / delta*^2
};

// Minimizes phi(delta) = (1-delta^2/2)^{-N} sqrt(2 log(2 (K/delta^2)^N))
// over delta in (0, sqrt 2), K = 16 (area cap bound) or K = 5 (covering
// table model m delta^2 ~ 5).
DeltaOptimum optimize_delta(int n_qubits, DeltaModel model);

// Net point file: CSV `x,y,z` plus optional JSON sidecar
// {"delta": ..., "certified": ..., "method": ...} at path + ".json".
SphericalNet load_net_points(const std::string& path);
void save_net_points(const SphericalNet& net, const std::string& path);

}  // namespace sepvol::nets

#include "sepvol/nets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sepvol::nets {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

double chordal_from_degrees(double eps_deg) {
  return 2.0 * std::sin(eps_deg * kPi / 360.0);
}

// cos of the face-circumradius angle of the regular icosahedron:
// phi^2 / (sqrt(3) sqrt(1 + phi^2)).
double icosa_cos_covering() {
  return kPhi * kPhi / (std::sqrt(3.0) * std::sqrt(1.0 + kPhi * kPhi));
}

double chordal_from_cos(double c) { return std::sqrt(std::max(0.0, 2.0 - 2.0 * c)); }

// Net points sorted by z for fast nearest-point queries.
struct SortedPoints {
  std::vector<Eigen::Vector3d> pts;  // sorted by z()

  explicit SortedPoints(std::vector<Eigen::Vector3d> p) : pts(std::move(p)) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.z() < b.z(); });
  }

  double min_dist(const Eigen::Vector3d& q) const {
    auto it = std::lower_bound(
        pts.begin(), pts.end(), q.z(),
        [](const Eigen::Vector3d& p, double z) { return p.z() < z; });
    std::ptrdiff_t up = it - pts.begin();
    std::ptrdiff_t down = up - 1;
    double best2 = 8.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(pts.size());
    while (down >= 0 || up < n) {
      bool progressed = false;
      if (up < n) {
        double dz = pts[static_cast<std::size_t>(up)].z() - q.z();
        if (dz * dz < best2) {
          best2 = std::min(best2,
                           (pts[static_cast<std::size_t>(up)] - q).squaredNorm());
          ++up;
          progressed = true;
        } else {
          up = n;
        }
      }
      if (down >= 0) {
        double dz = pts[static_cast<std::size_t>(down)].z() - q.z();
        if (dz * dz < best2) {
          best2 = std::min(
              best2, (pts[static_cast<std::size_t>(down)] - q).squaredNorm());
          --down;
          progressed = true;
        } else {
          down = -1;
        }
      }
      if (!progressed) break;
    }
    return std::sqrt(best2);
  }
};

// Visits a grid whose points are within chordal distance `a` of every point
// of S^2: polar bands of height pi/R with azimuth steps sized by the widest
// parallel of each band (meridian leg + parallel leg <= a geodesically).
template <typename F>
void for_each_grid_point(double a, F&& fn) {
  long bands = static_cast<long>(std::ceil(kPi / (a / 2.0) / 2.0)) * 2;
  if (bands < 4) bands = 4;
  for (long i = 0; i < bands; ++i) {
    double th0 = kPi * static_cast<double>(i) / static_cast<double>(bands);
    double th1 = kPi * static_cast<double>(i + 1) / static_cast<double>(bands);
    double thc = (th0 + th1) / 2.0;
    double smax = (th0 <= kPi / 2.0 && th1 >= kPi / 2.0)
                      ? 1.0
                      : std::max(std::sin(th0), std::sin(th1));
    long k = std::max<long>(
        1, static_cast<long>(std::ceil(2.0 * kPi * smax / (a / 2.0))));
    double sc = std::sin(thc), cc = std::cos(thc);
    for (long j = 0; j < k; ++j) {
      double ph = 2.0 * kPi * (static_cast<double>(j) + 0.5) /
                  static_cast<double>(k);
      fn(Eigen::Vector3d(sc * std::cos(ph), sc * std::sin(ph), cc));
    }
  }
}

}  // namespace

bool NetTableRow::usable() const { return delta > 0.0 && delta < kSqrt2; }

std::vector<NetTableRow> load_net_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_net_table: cannot open " + path);
  std::vector<NetTableRow> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "m,epsilon_degrees")
        throw std::runtime_error(
            "load_net_table: expected header 'm,epsilon_degrees' at line 1");
      continue;
    }
    std::istringstream ss(line);
    NetTableRow row;
    char comma = 0;
    if (!(ss >> row.m >> comma >> row.epsilon_degrees) || comma != ',')
      throw std::runtime_error("load_net_table: malformed row at line " +
                               std::to_string(line_no));
    if (row.epsilon_degrees <= 0.0 || row.epsilon_degrees >= 180.0)
      throw std::domain_error("load_net_table: epsilon out of (0,180) at line " +
                              std::to_string(line_no));
    if (row.m < 1)
      throw std::domain_error("load_net_table: m must be positive at line " +
                              std::to_string(line_no));
    row.delta = chordal_from_degrees(row.epsilon_degrees);
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.m < b.m; });
  return rows;
}

std::vector<NetTableRow> bundled_net_table() {
  // Exact polyhedral covering radii (deep holes at face circumcenters) plus
  // the 130-point covering used by the certified pipeline.
  auto deg = [](double cosv) { return std::acos(cosv) * 180.0 / kPi; };
  std::vector<NetTableRow> rows = {
      {4, deg(1.0 / 3.0), 0.0},
      {6, deg(1.0 / std::sqrt(3.0)), 0.0},
      {12, deg(icosa_cos_covering()), 0.0},
      {130, 11.3165625, 0.0},
  };
  for (auto& r : rows) r.delta = chordal_from_degrees(r.epsilon_degrees);
  return rows;
}

void SphericalNet::validate_points(double tol) const {
  for (const auto& p : points)
    if (std::abs(p.norm() - 1.0) > tol)
      throw std::invalid_argument("SphericalNet: point not on the unit sphere");
}

std::optional<double> exact_covering_radius(
    const std::vector<Eigen::Vector3d>& points) {
  auto matches_row_dots = [&](const std::vector<double>& expected,
                              double tol) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::vector<double> dots;
      for (std::size_t j = 0; j < points.size(); ++j)
        if (j != i) dots.push_back(points[i].dot(points[j]));
      std::sort(dots.begin(), dots.end());
      for (std::size_t k = 0; k < dots.size(); ++k)
        if (std::abs(dots[k] - expected[k]) > tol) return false;
    }
    return true;
  };

  if (points.size() == 4) {
    std::vector<double> expected(3, -1.0 / 3.0);
    if (matches_row_dots(expected, 1e-9))
      return chordal_from_cos(1.0 / 3.0);  // = 2/sqrt(3)
  }
  if (points.size() == 12) {
    double a = 1.0 / std::sqrt(5.0);
    std::vector<double> expected;
    expected.push_back(-1.0);
    for (int k = 0; k < 5; ++k) expected.push_back(-a);
    for (int k = 0; k < 5; ++k) expected.push_back(a);
    if (matches_row_dots(expected, 1e-9))
      return chordal_from_cos(icosa_cos_covering());
  }
  return std::nullopt;
}

CoverResult certify_covering(const std::vector<Eigen::Vector3d>& points,
                             double delta, double grid_spacing) {
  if (points.empty())
    throw std::invalid_argument("certify_covering: empty net");
  if (delta <= 0.0 || delta >= 2.0)
    throw std::domain_error("certify_covering: delta must be in (0, 2)");
  if (auto exact = exact_covering_radius(points)) {
    return CoverResult{*exact <= delta + 1e-12, *exact};
  }
  double h = grid_spacing > 0.0 ? grid_spacing : delta / 16.0;
  if (h > delta / 8.0)
    throw std::invalid_argument(
        "certify_covering: grid spacing must be at most delta/8");
  SortedPoints sp(points);
  double worst = 0.0;
  for_each_grid_point(h, [&](const Eigen::Vector3d& q) {
    worst = std::max(worst, sp.min_dist(q));
  });
  return CoverResult{worst <= delta - h, worst};
}

std::vector<Eigen::Vector3d> icosphere(int level) {
  if (level < 0 || level > 7)
    throw std::domain_error("icosphere: level must be in 0..7");
  std::vector<Eigen::Vector3d> verts;
  const double s = 1.0 / std::sqrt(1.0 + kPhi * kPhi);
  for (double sa : {-1.0, 1.0})
    for (double sb : {-1.0, 1.0}) {
      verts.emplace_back(0.0, sa * s, sb * kPhi * s);
      verts.emplace_back(sa * s, sb * kPhi * s, 0.0);
      verts.emplace_back(sa * kPhi * s, 0.0, sb * s);
    }

  // Faces: triples of mutually adjacent vertices (neighbor dot = 1/sqrt 5).
  const double adj = 1.0 / std::sqrt(5.0);
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) {
      if (std::abs(verts[static_cast<std::size_t>(i)].dot(
                       verts[static_cast<std::size_t>(j)]) -
                   adj) > 1e-9)
        continue;
      for (int k = j + 1; k < 12; ++k) {
        if (std::abs(verts[static_cast<std::size_t>(i)].dot(
                         verts[static_cast<std::size_t>(k)]) -
                     adj) > 1e-9 ||
            std::abs(verts[static_cast<std::size_t>(j)].dot(
                         verts[static_cast<std::size_t>(k)]) -
                     adj) > 1e-9)
          continue;
        faces.push_back({i, j, k});
      }
    }

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d m = (verts[static_cast<std::size_t>(a)] +
                           verts[static_cast<std::size_t>(b)])
                              .normalized();
      verts.push_back(m);
      int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  return verts;
}

std::vector<Eigen::Vector3d> fibonacci_points(long m) {
  if (m < 1) throw std::domain_error("fibonacci_points: m must be >= 1");
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(m));
  const double ga = kPi * (3.0 - std::sqrt(5.0));  // golden angle
  for (long i = 0; i < m; ++i) {
    double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(m);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double ph = ga * static_cast<double>(i);
    pts.emplace_back(r * std::cos(ph), r * std::sin(ph), z);
  }
  return pts;
}

namespace {

// Measured upper bound on the covering radius: worst grid gap plus the grid
// spacing.
double covering_upper_bound(const std::vector<Eigen::Vector3d>& pts,
                            double h) {
  SortedPoints sp(pts);
  double worst = 0.0;
  for_each_grid_point(h, [&](const Eigen::Vector3d& q) {
    worst = std::max(worst, sp.min_dist(q));
  });
  return worst + h;
}

SphericalNet finish_net(std::vector<Eigen::Vector3d> pts, double target,
                        NetMethod method) {
  SphericalNet net;
  net.points = std::move(pts);
  net.method = method;
  if (auto exact = exact_covering_radius(net.points)) {
    net.delta = *exact;
  } else {
    double rho = covering_upper_bound(net.points, target / 16.0);
    // Reported delta leaves room for the grid margin of the certification.
    net.delta = rho * (16.0 / 15.0) * (1.0 + 1e-9);
  }
  if (net.delta > target) return net;  // caller retries at finer resolution
  auto res = certify_covering(net.points, net.delta);
  net.certified = res.certified;
  return net;
}

}  // namespace

SphericalNet generate_net(double target_delta, NetMethod method) {
  if (!(target_delta > 0.05 && target_delta < kSqrt2))
    throw std::domain_error(
        "generate_net: target delta must be in (0.05, sqrt 2)");
  if (method == NetMethod::icosahedral_subdivision) {
    for (int level = 0; level <= 7; ++level) {
      SphericalNet net = finish_net(icosphere(level), target_delta, method);
      if (net.certified && net.delta <= target_delta) return net;
    }
    throw std::runtime_error("generate_net: target below supported resolution");
  }
  if (method == NetMethod::fibonacci) {
    long m = std::max<long>(8, static_cast<long>(std::ceil(
                                   10.0 / (target_delta * target_delta))));
    for (int tries = 0; tries < 24; ++tries) {
      SphericalNet net =
          finish_net(fibonacci_points(m), target_delta, method);
      if (net.certified && net.delta <= target_delta) return net;
      m = m + m / 4 + 1;
    }
    throw std::runtime_error("generate_net: target below supported resolution");
  }
  throw std::invalid_argument("generate_net: unsupported method");
}

double conv_inradius_bound(const SphericalNet& net) {
  if (!net.certified)
    throw std::invalid_argument("conv_inradius_bound: net is not certified");
  if (!(net.delta > 0.0 && net.delta < kSqrt2))
    throw std::domain_error("conv_inradius_bound: delta out of (0, sqrt 2)");
  double bound = 1.0 - net.delta * net.delta / 2.0;

  // Soundness probe: the support function of conv(net) over a direction grid
  // must never dip below the analytic radius.
  double a = std::max(0.02, net.delta / 8.0);
  double min_support = 2.0;
  for_each_grid_point(a, [&](const Eigen::Vector3d& u) {
    double s = -2.0;
    for (const auto& p : net.points) s = std::max(s, p.dot(u));
    min_support = std::min(min_support, s);
  });
  if (min_support < bound - 1e-9)
    throw std::logic_error(
        "conv_inradius_bound: support function dipped below 1 - delta^2/2 "
        "(covering certificate is wrong)");
  return bound;
}

double gaussian_max_bound(double radius, long cardinality) {
  if (radius <= 0.0)
    throw std::domain_error("gaussian_max_bound: radius must be positive");
  if (cardinality < 1)
    throw std::domain_error("gaussian_max_bound: cardinality must be >= 1");
  return radius * std::sqrt(2.0 * std::log(static_cast<double>(cardinality)));
}

Real tensor_net_bound(int n_qubits, long m, double delta,
                      PrecisionContext ctx) {
  ctx.validate();
  if (n_qubits < 1) throw std::domain_error("tensor_net_bound: N must be >= 1");
  if (m < 1) throw std::domain_error("tensor_net_bound: m must be >= 1");
  if (!(delta > 0.0 && delta < kSqrt2))
    throw std::domain_error("tensor_net_bound: delta must be in (0, sqrt 2)");
  long wp = ctx.working_bits();
  Real dl(delta, wp);
  Real shrink = Real(1L, wp) - dl * dl / 2L;                 // 1 - delta^2/2
  Real log_card = const_ln2(wp) + log(Real(m, wp)) * n_qubits;  // log(2 m^N)
  Real r = exp(-log(shrink) * n_qubits) * sqrt(log_card * 2L);
  return r.round_to(ctx.mantissa_bits);
}

DeltaOptimum optimize_delta(int n_qubits, DeltaModel model) {
  if (n_qubits < 2) throw std::domain_error("optimize_delta: N must be >= 2");
  const double K = model == DeltaModel::cap_16 ? 16.0 : 5.0;
  const double N = static_cast<double>(n_qubits);
  // log phi keeps the shrink factor (1 - delta^2/2)^{-N} from overflowing
  // during the search at large N.
  auto log_phi = [&](double d) {
    double card_log = std::log(2.0) + N * (std::log(K) - 2.0 * std::log(d));
    return -N * std::log1p(-d * d / 2.0) + 0.5 * std::log(2.0 * card_log);
  };
  double lo = 1e-4, hi = kSqrt2 - 1e-9;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - (hi - lo) * invphi;
  double b = lo + (hi - lo) * invphi;
  double fa = log_phi(a), fb = log_phi(b);
  while (hi - lo > 1e-6) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - (hi - lo) * invphi;
      fa = log_phi(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + (hi - lo) * invphi;
      fb = log_phi(b);
    }
  }
  DeltaOptimum out;
  out.delta_star = (lo + hi) / 2.0;
  out.bound = std::exp(log_phi(out.delta_star));
  out.implied_m = K / (out.delta_star * out.delta_star);
  return out;
}

SphericalNet load_net_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_net_points: cannot open " + path);
  SphericalNet net;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "x,y,z") continue;
    std::istringstream ss(line);
    double x = 0, y = 0, z = 0;
    char c1 = 0, c2 = 0;
    if (!(ss >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',')
      throw std::runtime_error("load_net_points: malformed row at line " +
                               std::to_string(line_no));
    net.points.emplace_back(x, y, z);
  }
  net.validate_points();

  std::ifstream side(path + ".json");
  if (side) {
    nlohmann::json j = nlohmann::json::parse(side);
    if (j.contains("delta")) net.delta = j["delta"].get<double>();
    if (j.contains("certified")) net.certified = j["certified"].get<bool>();
    if (j.contains("method")) {
      std::string m = j["method"].get<std::string>();
      if (m == "icosahedral_subdivision")
        net.method = NetMethod::icosahedral_subdivision;
      else if (m == "fibonacci")
        net.method = NetMethod::fibonacci;
    }
  }
  return net;
}

void save_net_points(const SphericalNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_net_points: cannot open " + path);
  out << "x,y,z\n";
  out.precision(17);
  for (const auto& p : net.points)
    out << p.x() << ',' << p.y() << ',' << p.z() << '\n';

  nlohmann::ordered_json j;
  j["delta"] = net.delta;
  j["certified"] = net.certified;
  j["method"] = net.method == NetMethod::icosahedral_subdivision
                    ? "icosahedral_subdivision"
                    : (net.method == NetMethod::fibonacci ? "fibonacci"
                                                          : "user");
  std::ofstream side(path + ".json");
  side << j.dump(2) << '\n';
}

}  // namespace sepvol::nets

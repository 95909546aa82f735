#include "doctest.h"

#include <cmath>

#include "sepvol/gue.hpp"
#include "sepvol/mc_oracle.hpp"
#include "sepvol/qubit_geometry.hpp"

using namespace sepvol;
using namespace sepvol::mc_oracle;

namespace {

// Membership in the convex hull of a small point set in R^3 by brute-force
// facet enumeration; good enough for the six-point symmetrization test.
class SmallHull {
 public:
  explicit SmallHull(std::vector<Eigen::Vector3d> pts) : pts_(std::move(pts)) {
    const std::size_t n = pts_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Eigen::Vector3d nrm =
              (pts_[j] - pts_[i]).cross(pts_[k] - pts_[i]);
          if (nrm.norm() < 1e-12) continue;
          nrm.normalize();
          double off = nrm.dot(pts_[i]);
          double lo = off, hi = off;
          for (const auto& p : pts_) {
            lo = std::min(lo, nrm.dot(p));
            hi = std::max(hi, nrm.dot(p));
          }
          if (hi <= off + 1e-12)
            facets_.emplace_back(nrm, off);  // all points below plane
          else if (lo >= off - 1e-12)
            facets_.emplace_back(-nrm, -off);
        }
  }

  bool contains(const Eigen::Vector3d& x) const {
    for (const auto& [nrm, off] : facets_)
      if (nrm.dot(x) > off + 1e-12) return false;
    return true;
  }

 private:
  std::vector<Eigen::Vector3d> pts_;
  std::vector<std::pair<Eigen::Vector3d, double>> facets_;
};

// E max of k iid standard normals: k Int x phi(x) Phi(x)^{k-1} dx by Simpson.
double quad_max_of_normals(int k) {
  const int n = 4000;
  const double lim = 10.0;
  const double h = 2.0 * lim / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    double x = -lim + h * i;
    double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    double phi = std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI);
    double cdf = 0.5 * std::erfc(-x / std::sqrt(2.0));
    acc += w * x * phi * std::pow(cdf, k - 1);
  }
  return k * acc * h / 3.0;
}

}  // namespace

TEST_SUITE("mc_oracle") {

TEST_CASE("mean width: unit ball support is exact with zero variance") {
  auto est = mc_mean_width([](const Eigen::VectorXd&) { return 1.0; }, 5, 1000,
                           11);
  CHECK(est.mean == doctest::Approx(1.0));
  CHECK(est.stderr_ == doctest::Approx(0.0));
}

TEST_CASE("mean width: segment in the plane averages |cos| = 2/pi") {
  auto est = mc_mean_width(
      [](const Eigen::VectorXd& u) { return std::abs(u(0)); }, 2, 100000, 12);
  CHECK(std::abs(est.mean - 2.0 / M_PI) <= 3.0 * est.stderr_);
}

TEST_CASE("mean width: trace-norm ball via the operator-norm support") {
  // support of the trace ball is the operator norm of the direction
  auto est = mc_mean_width(
      [](const Eigen::VectorXd& u) {
        qubit::PauliVector v{{u(0), u(1), u(2), u(3)}};
        return gue::op_norm(qubit::pauli_recompose(v));
      },
      4, 100000, 13);
  double gamma4 = 0.75 * std::sqrt(2.0 * M_PI);
  double exact = (3.0 / std::sqrt(M_PI)) / gamma4;  // E|G|_op / gamma_4
  CHECK(std::abs(est.mean - exact) <= 3.0 * est.stderr_);
  CHECK_THROWS_AS(mc_mean_width([](const Eigen::VectorXd&) { return 1.0; }, 2,
                                50, 1),
                  std::invalid_argument);
}

TEST_CASE("rejection volume: trace-norm ball is a cylinder of volume 2 pi/3") {
  std::vector<std::pair<double, double>> box(4, {-1.0, 1.0});
  auto vol = mc_volume_ratio(
      [](const Eigen::VectorXd& x) {
        double r = std::sqrt(x(1) * x(1) + x(2) * x(2) + x(3) * x(3));
        const double s = 1.0 / std::sqrt(2.0);
        return std::abs((x(0) + r) * s) + std::abs((x(0) - r) * s) <= 1.0;
      },
      box, 4, 400000, 21);
  CHECK_FALSE(vol.low_acceptance);
  CHECK(std::abs(vol.estimate.mean - 2.0 * M_PI / 3.0) <=
        3.0 * vol.estimate.stderr_);
}

TEST_CASE("rejection volume: Hilbert-Schmidt ball in dimension 4") {
  std::vector<std::pair<double, double>> box(4, {-1.0, 1.0});
  auto vol = mc_volume_ratio(
      [](const Eigen::VectorXd& x) { return x.norm() <= 1.0; }, box, 4,
      400000, 22);
  CHECK(std::abs(vol.estimate.mean - M_PI * M_PI / 2.0) <=
        3.0 * vol.estimate.stderr_);
}

TEST_CASE("rejection volume: symmetrized triangle brackets 2hA .. (8/3)hA") {
  // triangle W in the plane z = 1 (distance 1 from the origin), area 1/2
  std::vector<Eigen::Vector3d> hull_pts = {
      {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {0, 0, -1}, {-1, 0, -1}, {0, -1, -1}};
  SmallHull hull(hull_pts);
  std::vector<std::pair<double, double>> box(3, {-1.0, 1.0});
  auto vol = mc_volume_ratio(
      [&](const Eigen::VectorXd& x) {
        return hull.contains(Eigen::Vector3d(x(0), x(1), x(2)));
      },
      box, 3, 400000, 23);
  double lo = 2.0 * 0.5;                // 2 h vol W
  double hi = 2.0 * (4.0 / 3.0) * 0.5;  // 2 h (2^n/(n+1)) vol W, n = 2
  CHECK(vol.estimate.mean + 3.0 * vol.estimate.stderr_ >= lo);
  CHECK(vol.estimate.mean - 3.0 * vol.estimate.stderr_ <= hi);
}

TEST_CASE("rejection volume: tiny bodies widen the error bars") {
  std::vector<std::pair<double, double>> box(4, {-1.0, 1.0});
  double radius = 0.05;
  auto vol = mc_volume_ratio(
      [&](const Eigen::VectorXd& x) { return x.norm() <= radius; }, box, 4,
      100000, 24);
  CHECK(vol.low_acceptance);
  double truth = M_PI * M_PI / 2.0 * std::pow(radius, 4);
  CHECK(std::abs(vol.estimate.mean - truth) <= 3.0 * vol.estimate.stderr_);
}

TEST_CASE("rejection volume: centrally symmetric bodies match their mirror") {
  std::vector<std::pair<double, double>> box(4, {-1.0, 1.0});
  auto direct = mc_volume_ratio(
      [](const Eigen::VectorXd& x) { return x.norm() <= 1.0; }, box, 4, 50000,
      25);
  auto mirrored = mc_volume_ratio(
      [](const Eigen::VectorXd& x) { return (-x).norm() <= 1.0; }, box, 4,
      50000, 25);
  CHECK(direct.estimate.mean == mirrored.estimate.mean);
}

TEST_CASE("discrete Gaussian maximum: singleton is the exact equality case") {
  std::vector<Eigen::VectorXd> f;
  f.emplace_back(Eigen::VectorXd::Unit(8, 0));
  auto res = check_discrete_gaussian(f, 20000, 31);
  CHECK(res.bound == 0.0);  // R sqrt(2 log 1)
  CHECK(std::abs(res.estimate.mean) <= 3.0 * res.estimate.stderr_);
  CHECK(res.bound_ok);
}

TEST_CASE("discrete Gaussian maximum: sixteen orthonormal directions") {
  std::vector<Eigen::VectorXd> f;
  for (int i = 0; i < 16; ++i) f.emplace_back(Eigen::VectorXd::Unit(16, i));
  auto res = check_discrete_gaussian(f, 200000, 32);
  double oracle = quad_max_of_normals(16);
  CHECK(oracle == doctest::Approx(1.766).epsilon(5e-4));
  CHECK(std::abs(res.estimate.mean - oracle) <= 4.0 * res.estimate.stderr_);
  CHECK(res.estimate.mean <= std::sqrt(2.0 * std::log(16.0)));
  CHECK(res.bound == doctest::Approx(std::sqrt(2.0 * std::log(16.0))));
  CHECK(res.bound_ok);
}

TEST_CASE("discrete Gaussian maximum: orthonormal pair averages 1/sqrt(pi)") {
  std::vector<Eigen::VectorXd> f;
  f.emplace_back(Eigen::VectorXd::Unit(8, 0));
  f.emplace_back(Eigen::VectorXd::Unit(8, 1));
  auto res = check_discrete_gaussian(f, 200000, 36);
  // E max(g1, g2) = 1/sqrt(pi) = 0.5642, well under sqrt(2 log 2) = 1.1774
  CHECK(std::abs(res.estimate.mean - 1.0 / std::sqrt(M_PI)) <=
        3.0 * res.estimate.stderr_);
  CHECK(res.bound == doctest::Approx(1.1774).epsilon(1e-4));
  CHECK(res.estimate.mean < res.bound);
}

TEST_CASE("discrete Gaussian maximum: antipodal pair averages |g| = sqrt(2/pi)") {
  std::vector<Eigen::VectorXd> f;
  Eigen::VectorXd y = Eigen::VectorXd::Unit(4, 2);
  f.push_back(y);
  f.push_back(-y);
  auto res = check_discrete_gaussian(f, 200000, 33);
  CHECK(std::abs(res.estimate.mean - std::sqrt(2.0 / M_PI)) <=
        3.0 * res.estimate.stderr_);
  CHECK(res.estimate.mean <= res.bound);
  CHECK(res.bound == doctest::Approx(std::sqrt(2.0 * std::log(2.0))));
}

TEST_CASE("discrete Gaussian maximum: balanced tetrahedron tensor square") {
  // +-(u_j (x) u_k): 32 points on the unit sphere of R^16
  auto basis = qubit::tetrahedron_basis();
  std::vector<Eigen::VectorXd> f;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      auto cj = qubit::pauli_decompose(basis[j]).coords;
      auto ck = qubit::pauli_decompose(basis[k]).coords;
      Eigen::VectorXd y(16);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) y(4 * a + b) = cj[a] * ck[b];
      f.push_back(y);
      f.push_back(-y);
    }
  REQUIRE(f.size() == 32);
  auto res = check_discrete_gaussian(f, 100000, 34);
  CHECK(res.bound == doctest::Approx(std::sqrt(2.0 * std::log(32.0))).epsilon(1e-12));
  CHECK(res.bound_ok);
}

TEST_CASE("estimates are stable across seeds (flakiness guard)") {
  double means[3];
  double errs[3];
  std::uint64_t seeds[3] = {101, 707, 90210};
  for (int i = 0; i < 3; ++i) {
    auto est = mc_mean_width(
        [](const Eigen::VectorXd& u) { return std::abs(u(0)); }, 2, 50000,
        seeds[i]);
    means[i] = est.mean;
    errs[i] = est.stderr_;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      CHECK(std::abs(means[i] - means[j]) <=
            3.0 * std::sqrt(errs[i] * errs[i] + errs[j] * errs[j]));
}

TEST_CASE("input validation") {
  std::vector<Eigen::VectorXd> f;
  f.emplace_back(Eigen::VectorXd::Unit(4, 0));
  CHECK_THROWS_AS(check_discrete_gaussian(f, 500, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_discrete_gaussian({}, 2000, 1), std::invalid_argument);
  std::vector<std::pair<double, double>> box(2, {-1.0, 1.0});
  CHECK_THROWS_AS(
      mc_volume_ratio([](const Eigen::VectorXd&) { return true; }, box, 3,
                      1000, 1),
      std::invalid_argument);
}

}  // TEST_SUITE mc_oracle

#include "doctest.h"

#include <cmath>

#include "sepvol/gue.hpp"
#include "sepvol/numerics.hpp"

using namespace sepvol;
using namespace sepvol::gue;

namespace {

const PrecisionContext kCtx{256};

// E max(|l1|, |l2|) for the joint eigenvalue density of the 2x2 ensemble,
// proportional to (l1-l2)^2 exp(-(l1^2+l2^2)/2), by 2-d Simpson quadrature.
double quad_opnorm_2x2() {
  const int n = 2000;          // per axis, even; |.| kinks limit the order
  const double lim = 8.0;
  const double h = 2.0 * lim / n;
  auto simpson_w = [&](int i) {
    if (i == 0 || i == n) return 1.0;
    return i % 2 == 1 ? 4.0 : 2.0;
  };
  double z = 0.0, num = 0.0;
  for (int i = 0; i <= n; ++i) {
    double x = -lim + h * i;
    for (int j = 0; j <= n; ++j) {
      double y = -lim + h * j;
      double w = simpson_w(i) * simpson_w(j) * (x - y) * (x - y) *
                 std::exp(-(x * x + y * y) / 2.0);
      z += w;
      num += w * std::max(std::abs(x), std::abs(y));
    }
  }
  return num / z;
}

}  // namespace

TEST_SUITE("gue") {

TEST_CASE("moment recursion anchors") {
  for (long d : {1L, 2L, 3L, 7L, 64L, 100L}) {
    auto t = moment_table(d, 4, kCtx);
    CHECK(t.a[0].to_double() == doctest::Approx(1.0));
    CHECK(t.a[1].to_double() == doctest::Approx(0.25));
    double expect_a2 = 0.125 + 1.0 / (16.0 * static_cast<double>(d * d));
    CHECK(t.a[2].to_double() == doctest::Approx(expect_a2).epsilon(1e-14));
  }
}

TEST_CASE("scalar case equals the Gaussian double-factorial moments") {
  auto t = moment_table(1, 6, kCtx);
  double dfact = 1.0;
  for (int p = 1; p <= 6; ++p) {
    dfact *= 2 * p - 1;  // (2p-1)!!
    double expect = dfact / std::pow(4.0, p);
    CHECK(t.a[static_cast<std::size_t>(p)].to_double() ==
          doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("closed-form product bound dominates the recursion") {
  CHECK(catalan_product_bound(5, 1, kCtx).to_double() == doctest::Approx(0.25));
  // p = 2, d = 1: bound evaluates to exactly 3/16 = a_2
  CHECK(catalan_product_bound(1, 2, kCtx).to_double() ==
        doctest::Approx(3.0 / 16.0).epsilon(1e-15));

  for (long d : {1L, 2L, 8L, 64L}) {
    auto t = moment_table(d, 10, kCtx);
    for (int p = 1; p <= 10; ++p)
      CHECK(t.a[static_cast<std::size_t>(p)] <=
            catalan_product_bound(d, p, kCtx));
  }

  // asymptotically tight for p = o(d)
  auto t50 = moment_table(50, 3, kCtx);
  double ratio =
      catalan_product_bound(50, 3, kCtx).to_double() / t50.a[3].to_double();
  CHECK(ratio >= 1.0);
  CHECK(ratio < 1.10);
}

TEST_CASE("discrete norm bound: scalar case and the 2 sqrt(d) inequality") {
  double b1 = norm_bound_discrete(1, kCtx).to_double();
  CHECK(b1 >= std::sqrt(2.0 / M_PI));  // E|g| for one Gaussian
  CHECK(b1 < 2.0);

  double b4 = norm_bound_discrete(4, kCtx).to_double();
  CHECK(b4 < 4.0);  // 2 sqrt(4)

  for (long d : {2L, 3L, 5L, 10L, 37L, 100L, 400L, 1000L}) {
    double v = norm_bound_discrete(d, kCtx).to_double() /
               std::sqrt(static_cast<double>(d));
    CHECK(v < 2.0);
    CHECK_MESSAGE(v <= 2.0 - 0.6 * std::pow(static_cast<double>(d), -2.0 / 3.0),
                  "d = ", d);
  }
}

TEST_CASE("discrete norm bound never worsens with a deeper moment table") {
  for (long d : {2L, 16L, 100L}) {
    double shallow = norm_bound_discrete(d, kCtx, 4).to_double();
    double deep = norm_bound_discrete(d, kCtx, default_p_max(d)).to_double();
    CHECK(deep <= shallow + 1e-15);
  }
}

TEST_CASE("analytic bound: optimizer location and minimal value") {
  auto a = norm_bound_analytic(64, kCtx);
  CHECK(std::abs(a.t_star.to_double() - 1.38319) <= 1e-4);
  CHECK(std::abs(a.f_min.to_double() - 0.738542) <= 1e-5);
  CHECK(a.f_min.to_double() < std::exp(-0.3));

  // convex in log t on [0.5, 3], single interior minimum
  long wp = 320;
  Real log_pi = log(const_pi(wp));
  auto lf = [&](double t) {
    Real tt(t, wp);
    return ((pow(tt, 3) / 6L - log_pi - log(tt) * 3L) / (tt * 4L)).to_double();
  };
  std::vector<double> g;
  for (int i = 0; i <= 60; ++i) {
    double s = std::log(0.5) + (std::log(3.0) - std::log(0.5)) * i / 60.0;
    g.push_back(lf(std::exp(s)));
  }
  // second differences in log t stay non-negative, so one interior minimum
  std::size_t min_idx = 0;
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] < g[min_idx]) min_idx = i;
  CHECK(min_idx > 0);
  CHECK(min_idx < g.size() - 1);
  for (std::size_t i = 2; i < g.size(); ++i)
    CHECK(g[i] - 2.0 * g[i - 1] + g[i - 2] >= -1e-12);

  // bound approaches 2 sqrt(d) from below as d grows
  double prev_norm = 0.0;
  for (long d : {10L, 100L, 1000L, 10000L}) {
    auto r = norm_bound_analytic(d, kCtx);
    double normalized = r.bound.to_double() / std::sqrt(static_cast<double>(d));
    CHECK(normalized < 2.0);
    CHECK(normalized > prev_norm);
    prev_norm = normalized;
  }
}

TEST_CASE("sampling: determinism, symmetry, scale") {
  auto g1 = sample_gue(4, 777u);
  auto g2 = sample_gue(4, 777u);
  CHECK((g1 - g2).cwiseAbs().maxCoeff() == 0.0);  // bit-exact
  CHECK((g1 - g1.adjoint()).cwiseAbs().maxCoeff() < 1e-15);

  // E tr G = 0 and E tr G^2 = d^2 within 3 standard errors
  const long d = 3;
  auto tr_mean = mc::run_streams(5150, 100000, [&](mc::GaussianRng& rng) {
    return sample_gue(d, rng).trace().real();
  });
  CHECK(std::abs(tr_mean.mean) <= 3.0 * tr_mean.stderr_);

  auto tr2_mean = mc::run_streams(5151, 100000, [&](mc::GaussianRng& rng) {
    auto g = sample_gue(d, rng);
    return (g * g).trace().real();
  });
  CHECK(std::abs(tr2_mean.mean - static_cast<double>(d * d)) <=
        3.0 * tr2_mean.stderr_);
}

TEST_CASE("2x2 operator norm mean against the quadrature oracle") {
  double quad = quad_opnorm_2x2();
  CHECK(std::abs(quad - 3.0 / std::sqrt(M_PI)) < 1e-5);  // closed form

  auto est = mc::run_streams(31337, 100000, [](mc::GaussianRng& rng) {
    return op_norm(sample_gue(2, rng));
  });
  CHECK(std::abs(est.mean - quad) <= 3.0 * est.stderr_);
}

TEST_CASE("sampled operator-norm means stay under both analytic bounds") {
  for (long d : {2L, 4L, 8L}) {
    auto est = mc::run_streams(4800 + d, 20000, [&](mc::GaussianRng& rng) {
      return op_norm(sample_gue(d, rng));
    });
    double discrete = norm_bound_discrete(d, kCtx).to_double();
    double analytic = norm_bound_analytic(d, kCtx).bound.to_double();
    CHECK(est.mean - 3.0 * est.stderr_ <= discrete);
    CHECK(est.mean - 3.0 * est.stderr_ <= analytic);
  }
  // at d = 2 the best moment bound is (E tr G^2)^{1/2} = d
  CHECK(norm_bound_discrete(2, kCtx).to_double() ==
        doctest::Approx(2.0).epsilon(1e-20));
}

TEST_CASE("eigensolver reconstruction stays well inside the 1e-10 contract") {
  mc::GaussianRng rng(60601);
  for (long d : {4L, 16L, 64L}) {
    Eigen::MatrixXcd m = sample_gue(d, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::MatrixXcd rebuilt = es.eigenvectors() *
                               es.eigenvalues().asDiagonal() *
                               es.eigenvectors().adjoint();
    CHECK((rebuilt - m).norm() / m.norm() < 1e-12);
  }
}

TEST_CASE("sampled moments agree with the recursion at small d") {
  for (long d : {1L, 2L, 4L}) {
    auto table = moment_table(d, 3, kCtx);
    for (int p = 1; p <= 3; ++p) {
      auto est = moment_mc_estimate(d, p, 30000, 9000 + 10 * d + p);
      double expect = table.a[static_cast<std::size_t>(p)].to_double();
      CHECK_MESSAGE(std::abs(est.mean - expect) <= 4.0 * est.stderr_,
                    "d = ", d, ", p = ", p);
    }
  }
}

TEST_CASE("mean width of the trace-norm ball at d = 2") {
  auto r = mean_width_trace_ball(2, 100000, 2024, kCtx);
  // E|G|_op / gamma_4 with gamma_4 = (3/4) sqrt(2 pi)
  double gamma4 = 0.75 * std::sqrt(2.0 * M_PI);
  CHECK(gamma4 == doctest::Approx(1.879971).epsilon(1e-6));
  double exact = (3.0 / std::sqrt(M_PI)) / gamma4;
  CHECK(std::abs(r.mc.mean - exact) <= 3.0 * r.mc.stderr_);
  CHECK(r.mc.mean <= r.bound.to_double() + 3.0 * r.mc.stderr_);

  for (long d : {2L, 3L, 4L}) {
    auto rr = mean_width_trace_ball(d, 1000, 99, kCtx);
    double cap = 2.0 * std::sqrt(static_cast<double>(d)) /
                 numerics::gamma_k(d * d, kCtx).to_double();
    CHECK(rr.bound.to_double() < cap);
  }

  CHECK_THROWS_AS(mean_width_trace_ball(2, 50, 1, kCtx),
                  std::invalid_argument);
}

TEST_CASE("stream reduction is independent of scheduling") {
  auto a = mc::run_streams(1234, 5000,
                           [](mc::GaussianRng& rng) { return rng.normal(); });
  auto b = mc::run_streams(1234, 5000,
                           [](mc::GaussianRng& rng) { return rng.normal(); });
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
}

}  // TEST_SUITE gue

#include "sepvol/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "sepvol/bounds.hpp"
#include "sepvol/gue.hpp"
#include "sepvol/mc_oracle.hpp"
#include "sepvol/nets.hpp"
#include "sepvol/numerics.hpp"
#include "sepvol/qubit_geometry.hpp"

namespace sepvol::verify {

namespace {

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

class Suite {
 public:
  explicit Suite(const SuiteOptions& opt) : opt_(opt), ctx_(opt.precision_bits) {}

  void check(const std::string& name, const std::function<bool(std::string&)>& fn) {
    CheckResult r;
    r.name = name;
    try {
      r.pass = fn(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

  std::int64_t samples_or(std::int64_t dflt) const {
    return opt_.samples > 0 ? opt_.samples : dflt;
  }

  const SuiteOptions opt_;
  const PrecisionContext ctx_;
  std::vector<CheckResult> results_;
};

nets::NetTableRow anchor_row() {
  for (const auto& r : nets::bundled_net_table())
    if (r.m == 130) return r;
  throw std::logic_error("bundled table lost its 130-point row");
}

void add_golden_checks(Suite& s) {
  const PrecisionContext ctx = s.ctx_;

  s.check("golden.net_bound_qubyte", [&](std::string& d) {
    auto p = bounds::separable_ratio_pipeline(8, anchor_row(), ctx);
    double v = p.net_bound.to_double();
    d = fmt("net bound %.8f vs 10.417406 +- 1e-5", v, 0);
    return std::abs(v - 10.417406) <= 1e-5;
  });

  s.check("golden.upsilon_qubyte", [&](std::string& d) {
    auto p = bounds::separable_ratio_pipeline(8, anchor_row(), ctx);
    double v = p.upsilon.to_double();
    d = fmt("upsilon %.10f vs 0.02411446 (<=, 6 digits)", v, 0);
    return v <= 0.02411446 && v >= 0.02411446 * (1.0 - 1e-6);
  });

  s.check("golden.per_dim_qubyte", [&](std::string& d) {
    auto p = bounds::separable_ratio_pipeline(8, anchor_row(), ctx);
    double v = p.per_dim.to_double();
    d = fmt("per-dim %.7f vs 0.49534 +- 5e-5", v, 0);
    return std::abs(v - 0.49534) <= 5e-5;
  });

  s.check("golden.ratio_exponent_qubyte", [&](std::string& d) {
    auto p = bounds::separable_ratio_pipeline(8, anchor_row(), ctx);
    long e = p.log_ratio_upper.decimal_exponent();
    double log10v = p.log_ratio_upper.log10_abs().to_double();
    double ref = std::log10(8.6) - 19996.0;
    d = fmt("decimal exponent %g, log10 %g", static_cast<double>(e), log10v);
    return e >= -19997 && e <= -19995 && std::abs(log10v - ref) <= 1.0;
  });

  s.check("golden.per_dim_six_qubits", [&](std::string& d) {
    auto p = bounds::separable_ratio_pipeline(6, anchor_row(), ctx);
    double v = p.per_dim.to_double();
    d = fmt("per-dim %.5f < 0.95", v, 0);
    return v < 0.95;
  });

  s.check("golden.plugin_members", [&](std::string& d) {
    auto rb = bounds::ratio_bounds(8, ctx);
    double upper = rb.upper.to_double();
    double expect = 4.0 * std::sqrt(40.0) / 27.0;
    double lower_basic = rb.lower_basic.to_double();
    double lower_refined = rb.lower_refined.to_double();
    bool ok = std::abs(upper - expect) <= 1e-12 &&
              std::abs(lower_basic - 0.25 / 27.0) <= 1e-12 &&
              std::abs(lower_refined / (std::sqrt(std::exp(1.0) / (8.0 * M_PI)) / 27.0) - 1.0) <= 1e-5 &&
              bounds::first_nontrivial_qubits(ctx) == 8;
    d = fmt("upper %.9f, first nontrivial N %g", upper,
            static_cast<double>(bounds::first_nontrivial_qubits(ctx)));
    return ok;
  });

  s.check("golden.asymptotic_constants", [&](std::string& d) {
    auto c = bounds::asymptotic_constants(ctx);
    bool ok = std::abs(c.lower_limit.to_double() - 0.844561) <= 1e-6 &&
              std::abs(c.upper_limit.to_double() - 2.1811) <= 1e-4 &&
              std::abs(c.refined_lower.to_double() - 0.32887) <= 1e-5;
    d = fmt("limits %.6f / %.5f", c.lower_limit.to_double(),
            c.upper_limit.to_double());
    return ok;
  });

  s.check("golden.analytic_norm_optimizer", [&](std::string& d) {
    auto a = gue::norm_bound_analytic(64, ctx);
    double t = a.t_star.to_double(), f = a.f_min.to_double();
    d = fmt("t* = %.6f, f(t*) = %.7f", t, f);
    return std::abs(t - 1.38319) <= 1e-4 && std::abs(f - 0.738542) <= 1e-5;
  });

  s.check("golden.state_set_volume", [&](std::string& d) {
    Real expected =
        log(const_pi(ctx.working_bits()) * sqrt(Real(2L, ctx.working_bits())) / 3L);
    Real got = bounds::log_volume_state_set(2, ctx).log_abs();
    double vr256 = bounds::state_set_volume_radius(256, ctx).to_double() * 16.0;
    bool ok = abs(got - expected).to_double() <= 1e-20 &&
              std::abs(vr256 / std::exp(-0.25) - 1.0) <= 0.01;
    d = fmt("log vol(2) %.12f, vr(256)*sqrt(256) %.6f", got.to_double(), vr256);
    return ok;
  });

  s.check("golden.alpha_exponents", [&](std::string& d) {
    double a2 = qubit::alpha_exponent(2, ctx).to_double();
    double a3 = qubit::alpha_exponent(3, ctx).to_double();
    double expect2 = std::log2(27.0 / 16.0) / 8.0;
    d = fmt("alpha_2 %.9f, alpha_3 %.9f", a2, a3);
    return std::abs(a2 - expect2) <= 1e-14 && std::abs(a3 - 0.0608264) <= 1e-7;
  });
}

void add_invariant_checks(Suite& s) {
  const PrecisionContext ctx = s.ctx_;

  s.check("desk.gamma_k_window", [&](std::string& d) {
    for (long k : {1L, 2L, 3L, 4L, 16L, 100L, 1000L, 65536L}) {
      double g = numerics::gamma_k(k, ctx).to_double();
      if (!(g > std::sqrt(static_cast<double>(k - 1)) &&
            g < std::sqrt(static_cast<double>(k)))) {
        d = fmt("k with violation: %g (gamma %g)", static_cast<double>(k), g);
        return false;
      }
    }
    d = "sqrt(k-1) < gamma_k < sqrt(k)";
    return true;
  });

  s.check("desk.gamma_k_product_identity", [&](std::string& d) {
    for (long k : {1L, 2L, 7L, 64L, 4096L}) {
      Real prod = numerics::log_gamma_k(k, ctx) + numerics::log_gamma_k(k + 1, ctx);
      Real expect = log(Real(k, ctx.working_bits()));
      if (!close_rel(prod, expect, ctx.mantissa_bits - 16, 1e-30)) {
        d = fmt("identity fails at k = %g", static_cast<double>(k), 0);
        return false;
      }
    }
    d = "gamma_k gamma_{k+1} = k";
    return true;
  });

  s.check("desk.ball_volume_recursion", [&](std::string& d) {
    for (long m = 1; m <= 24; ++m) {
      Real lhs = numerics::log_ball_volume(m, ctx) -
                 numerics::log_ball_volume(m + 2, ctx);
      Real rhs = log(Real(m + 2, ctx.working_bits()) /
                     (const_pi(ctx.working_bits()) * 2L));
      if (!close_rel(lhs, rhs, ctx.mantissa_bits - 16, 1e-30)) {
        d = fmt("recursion fails at m = %g", static_cast<double>(m), 0);
        return false;
      }
    }
    d = "V_m / V_{m+2} = (m+2)/(2 pi)";
    return true;
  });

  s.check("desk.moment_recursion_scalar", [&](std::string& d) {
    auto table = gue::moment_table(1, 6, ctx);
    double dbl_fact = 1.0;
    for (int p = 1; p <= 6; ++p) {
      dbl_fact *= 2 * p - 1;
      double expect = dbl_fact / std::pow(4.0, p);
      if (std::abs(table.a[static_cast<std::size_t>(p)].to_double() - expect) >
          1e-15 * expect) {
        d = fmt("scalar moment off at p = %g", static_cast<double>(p), 0);
        return false;
      }
    }
    d = "a_p(1) = (2p-1)!!/4^p";
    return true;
  });

  s.check("desk.norm_bound_below_semicircle_edge", [&](std::string& d) {
    for (long dim : {2L, 3L, 4L, 8L, 16L, 64L, 128L, 512L, 1000L}) {
      double v = gue::norm_bound_discrete(dim, ctx).to_double() /
                 std::sqrt(static_cast<double>(dim));
      double cap = 2.0 - 0.6 * std::pow(static_cast<double>(dim), -2.0 / 3.0);
      if (v > cap) {
        d = fmt("bound/sqrt(d) %.6f above cap %.6f", v, cap);
        return false;
      }
    }
    d = "bound/sqrt(d) <= 2 - 0.6 d^{-2/3}";
    return true;
  });

  s.check("desk.tetrahedron_certification", [&](std::string& d) {
    auto tetra = std::vector<Eigen::Vector3d>();
    const double t = 1.0 / std::sqrt(3.0);
    tetra.emplace_back(t, t, t);
    tetra.emplace_back(t, -t, -t);
    tetra.emplace_back(-t, t, -t);
    tetra.emplace_back(-t, -t, t);
    bool cert_hi = nets::certify_covering(tetra, 1.16).certified;
    bool cert_exact =
        nets::certify_covering(tetra, 2.0 / std::sqrt(3.0)).certified;
    bool cert_lo = nets::certify_covering(tetra, 1.15).certified;
    nets::SphericalNet net;
    net.points = tetra;
    net.delta = 2.0 / std::sqrt(3.0);
    net.certified = true;
    double inr = nets::conv_inradius_bound(net);
    d = fmt("inradius bound %.9f (expect 1/3)", inr, 0);
    return cert_hi && cert_exact && !cert_lo && std::abs(inr - 1.0 / 3.0) <= 1e-12;
  });

  s.check("desk.bundled_table_density", [&](std::string& d) {
    for (const auto& r : nets::bundled_net_table()) {
      if (r.m >= 20) {
        double md2 = static_cast<double>(r.m) * r.delta * r.delta;
        if (md2 < 4.5 || md2 > 6.0) {
          d = fmt("m = %g has m delta^2 = %.4f", static_cast<double>(r.m), md2);
          return false;
        }
      }
    }
    d = "m delta^2 in [4.5, 6.0] for m >= 20";
    return true;
  });

  s.check("desk.optimal_delta_model", [&](std::string& d) {
    auto opt = nets::optimize_delta(8, nets::DeltaModel::table_5);
    d = fmt("delta* %.4f, implied m %.1f", opt.delta_star, opt.implied_m);
    return std::abs(opt.delta_star - 0.15) <= 0.01 &&
           std::abs(opt.implied_m - 222.0) <= 10.0;
  });

  s.check("desk.tetrahedron_basis_gram", [&](std::string& d) {
    auto basis = qubit::tetrahedron_basis();
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double g = (basis[static_cast<std::size_t>(i)].adjoint() *
                    basis[static_cast<std::size_t>(j)])
                       .trace()
                       .real();
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    d = fmt("max Gram deviation %.2e", worst, 0);
    return worst <= 1e-12;
  });

  s.check("desk.balanced_inner_product", [&](std::string& d) {
    mc::GaussianRng rng(s.opt_.seed);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::MatrixXcd u = gue::sample_gue(2, rng);
      Eigen::MatrixXcd v = gue::sample_gue(2, rng);
      double lhs = qubit::modified_inner_product(u, v);
      auto au = qubit::apply_balancing(qubit::pauli_decompose(u));
      auto av = qubit::apply_balancing(qubit::pauli_decompose(v));
      double rhs = 0.0;
      for (int i = 0; i < 4; ++i)
        rhs += au.coords[static_cast<std::size_t>(i)] *
               av.coords[static_cast<std::size_t>(i)];
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    d = fmt("max deviation %.2e over 1000 pairs", worst, 0);
    return worst <= 1e-12;
  });

  s.check("desk.balancing_determinant_identity", [&](std::string& d) {
    for (int n = 1; n <= 10; ++n) {
      long dsq = (1L << n) * (1L << n);
      Real ratio = qubit::log_det_balancing_tensor(n, ctx) /
                   (const_ln2(ctx.working_bits()) * dsq * n);
      Real alpha = qubit::alpha_qubit(ctx);
      if (!close_rel(ratio, alpha, ctx.mantissa_bits - 16)) {
        d = fmt("identity fails at N = %g", static_cast<double>(n), 0);
        return false;
      }
    }
    d = "log det / (d^2 log d) = alpha";
    return true;
  });

  s.check("desk.symmetrization_factor_range", [&](std::string& d) {
    for (int n_qubits : {1, 2, 4, 8, 16}) {
      long n = (1L << n_qubits) * (1L << n_qubits) - 1;
      auto f = bounds::symmetrization_factor(n, ctx);
      double per_dim =
          std::exp(f.log_ratio_factor.to_double() / static_cast<double>(n));
      if (per_dim < 1.0 || per_dim > 2.0) {
        d = fmt("per-dim factor %.4f out of [1,2]", per_dim, 0);
        return false;
      }
    }
    d = "(2^n/(n+1))^{1/n} in [1, 2]";
    return true;
  });

  s.check("desk.report_sandwich", [&](std::string& d) {
    for (int n = 2; n <= 20; ++n) {
      auto rb = bounds::ratio_bounds(n, ctx);
      bounds::ratio_bounds_report(rb, ctx).check();
      if (!(rb.lower_basic < rb.upper)) {
        d = fmt("lower above upper at N = %g", static_cast<double>(n), 0);
        return false;
      }
    }
    d = "lower <= upper for N in 2..20";
    return true;
  });
}

void add_mc_checks(Suite& s) {
  const PrecisionContext ctx = s.ctx_;
  const std::uint64_t seed = s.opt_.seed;

  s.check("mc.moments_vs_recursion", [&](std::string& d) {
    std::int64_t samples = s.samples_or(100000);
    for (long dim : {2L, 3L, 4L}) {
      auto table = gue::moment_table(dim, 4, ctx);
      for (int p = 1; p <= 4; ++p) {
        auto est = gue::moment_mc_estimate(dim, p, samples,
                                           mc::derive_seed(seed, 100 + 10 * dim + p));
        double expect = table.a[static_cast<std::size_t>(p)].to_double();
        if (std::abs(est.mean - expect) > 4.0 * est.stderr_) {
          d = fmt("moment off at d, p = %g, %g", static_cast<double>(dim),
                  static_cast<double>(p));
          return false;
        }
      }
    }
    d = "sampled moments within 4 sigma of the recursion";
    return true;
  });

  s.check("mc.norm_2x2_exact", [&](std::string& d) {
    std::int64_t samples = s.samples_or(100000);
    auto est = mc::run_streams(mc::derive_seed(seed, 7), samples,
                               [](mc::GaussianRng& rng) {
                                 return gue::op_norm(gue::sample_gue(2, rng));
                               });
    double expect = 3.0 / std::sqrt(M_PI);
    d = fmt("sampled %.5f vs 3/sqrt(pi) = %.5f", est.mean, expect);
    return std::abs(est.mean - expect) <= 3.0 * est.stderr_;
  });

  s.check("mc.mean_width_trace_ball_d2", [&](std::string& d) {
    auto r = gue::mean_width_trace_ball(2, s.samples_or(100000),
                                        mc::derive_seed(seed, 8), ctx);
    double exact = 2.0 * std::sqrt(2.0) / M_PI;  // E|G|_op / gamma_4
    bool ok = std::abs(r.mc.mean - exact) <= 3.0 * r.mc.stderr_ &&
              r.mc.mean <= r.bound.to_double() + 3.0 * r.mc.stderr_;
    d = fmt("mc %.5f vs exact %.5f", r.mc.mean, exact);
    return ok;
  });

  s.check("mc.segment_mean_width", [&](std::string& d) {
    auto est = mc_oracle::mc_mean_width(
        [](const Eigen::VectorXd& u) { return std::abs(u(0)); }, 2,
        s.samples_or(100000), mc::derive_seed(seed, 9));
    double expect = 2.0 / M_PI;
    d = fmt("sampled %.5f vs 2/pi = %.5f", est.mean, expect);
    return std::abs(est.mean - expect) <= 3.0 * est.stderr_;
  });

  s.check("mc.trace_ball_volume", [&](std::string& d) {
    std::vector<std::pair<double, double>> box(4, {-1.0, 1.0});
    auto vol = mc_oracle::mc_volume_ratio(
        [](const Eigen::VectorXd& x) {
          // trace norm of the 2x2 Hermitian with these basis coordinates
          double c0 = x(0);
          double r = std::sqrt(x(1) * x(1) + x(2) * x(2) + x(3) * x(3));
          const double s = 1.0 / std::sqrt(2.0);
          return std::abs((c0 + r) * s) + std::abs((c0 - r) * s) <= 1.0;
        },
        box, 4, s.samples_or(200000), mc::derive_seed(seed, 10));
    double expect = 2.0 * M_PI / 3.0;
    d = fmt("sampled %.4f vs 2 pi / 3 = %.4f", vol.estimate.mean, expect);
    return std::abs(vol.estimate.mean - expect) <= 3.0 * vol.estimate.stderr_;
  });

  s.check("mc.discrete_gaussian_bound", [&](std::string& d) {
    std::int64_t samples = s.samples_or(20000);
    mc::GaussianRng shape_rng(mc::derive_seed(seed, 11));
    for (int trial = 0; trial < 8; ++trial) {
      int dim = 2 + static_cast<int>(shape_rng.uniform() * 30);
      int count = 1 + static_cast<int>(shape_rng.uniform() * 200);
      std::vector<Eigen::VectorXd> pts;
      for (int i = 0; i < count; ++i) {
        Eigen::VectorXd y(dim);
        for (int j = 0; j < dim; ++j) y(j) = shape_rng.normal();
        pts.push_back(y);
      }
      auto res = mc_oracle::check_discrete_gaussian(
          pts, samples, mc::derive_seed(seed, 200 + trial));
      if (!res.bound_ok) {
        d = fmt("bound violated: est %.4f vs bound %.4f", res.estimate.mean,
                res.bound);
        return false;
      }
    }
    d = "mean - 3 stderr <= R sqrt(2 log #F) on random sets";
    return true;
  });
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite,
                                   const SuiteOptions& options) {
  Suite s(options);
  if (suite == "golden") {
    add_golden_checks(s);
  } else if (suite == "mc") {
    add_mc_checks(s);
  } else if (suite == "desk") {
    add_golden_checks(s);
    add_invariant_checks(s);
    add_mc_checks(s);
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  return s.take();
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace sepvol::verify

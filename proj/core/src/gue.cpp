#include "sepvol/gue.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

#include "sepvol/numerics.hpp"

namespace sepvol::gue {

namespace {

Real real_from_mpq(const mpq_class& q, long prec) {
  Real r(prec);
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

std::vector<mpq_class> moments_exact(long d, int p_max) {
  std::vector<mpq_class> a;
  a.reserve(static_cast<std::size_t>(p_max) + 1);
  a.emplace_back(1);
  a.emplace_back(1, 4);
  mpq_class inv4d2(1, 4 * d * d);
  for (int p = 2; p <= p_max; ++p) {
    mpq_class head(2 * p - 1, 2 * p + 2);
    mpq_class corr =
        mpq_class(static_cast<long>(p) * (p - 1)) * inv4d2 *
        mpq_class(2 * p - 3, 2 * p);
    mpq_class ap = head * (a[p - 1] + corr * a[p - 2]);
    ap.canonicalize();
    a.push_back(ap);
  }
  return a;
}

std::vector<Real> moments_float(long d, int p_max, long wp) {
  std::vector<Real> a;
  a.reserve(static_cast<std::size_t>(p_max) + 1);
  a.emplace_back(1L, wp);
  a.emplace_back(Real(1L, wp) / 4L);
  Real inv4d2 = Real(1L, wp) / (Real(d, wp) * Real(d, wp) * 4L);
  for (int p = 2; p <= p_max; ++p) {
    Real head = Real(2L * p - 1, wp) / Real(2L * p + 2, wp);
    Real corr = Real(static_cast<long>(p) * (p - 1), wp) * inv4d2 *
                Real(2L * p - 3, wp) / Real(2L * p, wp);
    a.push_back(head * (a[p - 1] + corr * a[p - 2]));
  }
  return a;
}

}  // namespace

int default_p_max(long d) {
  double p = 3.0 * std::pow(static_cast<double>(d), 2.0 / 3.0);
  int r = static_cast<int>(std::ceil(p));
  return r < 8 ? 8 : r;
}

GueMomentTable moment_table(long d, int p_max, PrecisionContext ctx) {
  ctx.validate();
  if (d < 1) throw std::domain_error("moment_table: d must be >= 1");
  if (p_max < 1) throw std::domain_error("moment_table: p_max must be >= 1");
  long wp = ctx.working_bits();
  GueMomentTable table;
  table.d = d;
  if (d <= 64 && p_max <= 64) {
    auto exact = moments_exact(d, p_max);
    table.a.reserve(exact.size());
    for (const auto& q : exact)
      table.a.push_back(real_from_mpq(q, wp).round_to(ctx.mantissa_bits));
  } else {
    for (auto& v : moments_float(d, p_max, wp))
      table.a.push_back(v.round_to(ctx.mantissa_bits));
  }
  return table;
}

Real catalan_product_bound(long d, int p, PrecisionContext ctx) {
  ctx.validate();
  if (d < 1 || p < 1)
    throw std::domain_error("catalan_product_bound: need d, p >= 1");
  long wp = ctx.working_bits();
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * static_cast<unsigned long>(p),
               static_cast<unsigned long>(p));
  mpq_class head = mpq_class(binom) / mpq_class(static_cast<long>(p) + 1);
  mpq_class pow4(1);
  for (int i = 0; i < p; ++i) pow4 *= 4;
  head /= pow4;
  mpq_class prod(1);
  mpq_class inv4d2(1, 4 * d * d);
  for (long j = 1; j <= p; ++j) prod *= 1 + mpq_class(j * (j - 1)) * inv4d2;
  head *= prod;
  head.canonicalize();
  return real_from_mpq(head, wp).round_to(ctx.mantissa_bits);
}

Real norm_bound_discrete(long d, PrecisionContext ctx, int p_max) {
  ctx.validate();
  if (d < 1) throw std::domain_error("norm_bound_discrete: d must be >= 1");
  if (p_max <= 0) p_max = default_p_max(d);
  long wp = ctx.working_bits();
  PrecisionContext wctx(wp);
  GueMomentTable table = moment_table(d, p_max, wctx);

  // log (E tr G^{2p})^{1/2p} = (p log 4 + (p+1) log d + log a_p) / 2p
  Real ln4 = const_ln2(wp) * 2L;
  Real lnd = log(Real(d, wp));
  Real best(wp);
  bool have = false;
  for (int p = 1; p <= p_max; ++p) {
    Real lb = (ln4 * p + lnd * (p + 1) + log(table.a[static_cast<std::size_t>(p)])) /
              (2L * p);
    if (!have || lb < best) {
      best = lb;
      have = true;
    }
  }
  return exp(best).round_to(ctx.mantissa_bits);
}

namespace {

// log f(t) = (t^3/6 - log pi - 3 log t) / (4t)
Real log_f(const Real& t, const Real& log_pi) {
  return (pow(t, 3) / 6L - log_pi - log(t) * 3L) / (t * 4L);
}

}  // namespace

AnalyticNormBound norm_bound_analytic(long d, PrecisionContext ctx) {
  ctx.validate();
  if (d < 1) throw std::domain_error("norm_bound_analytic: d must be >= 1");
  long wp = ctx.working_bits();
  Real log_pi = log(const_pi(wp));

  // Golden-section search on [0.2, 5]; log f is convex in log t there.
  Real lo(0.2, wp), hi(5.0, wp);
  Real invphi = (sqrt(Real(5L, wp)) - 1L) / 2L;
  Real a = hi - (hi - lo) * invphi;
  Real b = lo + (hi - lo) * invphi;
  Real fa = log_f(a, log_pi), fb = log_f(b, log_pi);
  Real tol(1L, wp);
  mpfr_mul_2si(tol.raw(), tol.raw(), -(ctx.mantissa_bits / 2), MPFR_RNDN);
  while (hi - lo > tol) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - (hi - lo) * invphi;
      fa = log_f(a, log_pi);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + (hi - lo) * invphi;
      fb = log_f(b, log_pi);
    }
  }
  AnalyticNormBound out{Real(wp), Real(wp), Real(wp), 0};
  out.t_star = ((lo + hi) / 2L).round_to(ctx.mantissa_bits);
  out.f_min = exp(log_f((lo + hi) / 2L, log_pi)).round_to(ctx.mantissa_bits);

  // Round p = t* d^{2/3} to an admissible integer and evaluate the bound.
  Real d23 = pow(Real(d, wp), Real(2.0, wp) / 3L);
  double p_real = (out.t_star.round_to(64) * d23.round_to(64)).to_double();
  long p = std::lround(p_real);
  if (p < 1) p = 1;
  out.p = p;
  Real t_adm = Real(p, wp) / d23;
  Real log_bound =
      const_ln2(wp) + log(Real(d, wp)) / 2L + log_f(t_adm, log_pi) / d23;
  out.bound = exp(log_bound).round_to(ctx.mantissa_bits);
  return out;
}

Eigen::MatrixXcd sample_gue(long d, mc::GaussianRng& rng) {
  Eigen::MatrixXcd g(d, d);
  const double s = 1.0 / std::sqrt(2.0);
  for (long i = 0; i < d; ++i) g(i, i) = rng.normal();
  for (long i = 0; i < d; ++i)
    for (long j = i + 1; j < d; ++j) {
      std::complex<double> z{rng.normal() * s, rng.normal() * s};
      g(i, j) = z;
      g(j, i) = std::conj(z);
    }
  return g;
}

Eigen::MatrixXcd sample_gue(long d, std::uint64_t seed) {
  if (d < 1) throw std::domain_error("sample_gue: d must be >= 1");
  mc::GaussianRng rng(seed);
  return sample_gue(d, rng);
}

double op_norm(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double hs_norm(const Eigen::MatrixXcd& m) { return m.norm(); }

mc::McEstimate moment_mc_estimate(long d, int p, std::int64_t samples,
                                  std::uint64_t seed) {
  if (samples < 100)
    throw std::invalid_argument("moment_mc_estimate: samples < 100");
  const double scale = 1.0 / (2.0 * std::sqrt(static_cast<double>(d)));
  return mc::run_streams(seed, samples, [&](mc::GaussianRng& rng) {
    Eigen::MatrixXcd g = sample_gue(d, rng) * scale;
    Eigen::MatrixXcd g2 = g * g;
    Eigen::MatrixXcd acc = g2;
    for (int k = 1; k < p; ++k) acc = acc * g2;
    return acc.trace().real() / static_cast<double>(d);
  });
}

MeanWidthResult mean_width_trace_ball(long d, std::int64_t samples,
                                      std::uint64_t seed,
                                      PrecisionContext ctx) {
  ctx.validate();
  if (d < 2) throw std::domain_error("mean_width_trace_ball: d must be >= 2");
  if (samples < 100)
    throw std::invalid_argument("mean_width_trace_ball: samples < 100");
  MeanWidthResult out{Real(ctx.mantissa_bits), {}};
  out.bound = (norm_bound_discrete(d, PrecisionContext(ctx.working_bits())) /
               numerics::gamma_k(d * d, PrecisionContext(ctx.working_bits())))
                  .round_to(ctx.mantissa_bits);
  out.mc = mc::run_streams(seed, samples, [&](mc::GaussianRng& rng) {
    Eigen::MatrixXcd g = sample_gue(d, rng);
    return op_norm(g) / hs_norm(g);
  });
  return out;
}

}  // namespace sepvol::gue

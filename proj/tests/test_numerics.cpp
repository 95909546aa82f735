#include "doctest.h"

#include <mpfr.h>

#include <array>
#include <cmath>
#include <thread>
#include <vector>

#include "sepvol/log_real.hpp"
#include "sepvol/numerics.hpp"

using namespace sepvol;
using numerics::gamma_k;
using numerics::log_ball_volume;
using numerics::log_gamma;

namespace {

const PrecisionContext kCtx{256};

// Reference log Gamma through mpfr's own implementation at extra precision,
// independent of the Stirling-series path under test.
Real mpfr_lngamma_ref(const Real& x, long prec) {
  Real r(prec);
  mpfr_t tmp;
  mpfr_init2(tmp, prec);
  mpfr_set(tmp, x.raw(), MPFR_RNDN);
  mpfr_lngamma(r.raw(), tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return r;
}

double as_double(const Real& r) { return r.to_double(); }

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("log_gamma at integer and half-integer anchor points") {
  // Gamma(1) = 1, Gamma(4) = 6, Gamma(1/2) = sqrt(pi)
  CHECK(std::abs(as_double(log_gamma(1.0, kCtx))) < 1e-60);
  Real ln6 = log(Real(6L, 256));
  CHECK(close_rel(log_gamma(4.0, kCtx), ln6, 250));
  Real half_ln_pi = log(const_pi(256)) / 2L;
  CHECK(close_rel(log_gamma(0.5, kCtx), half_ln_pi, 250));
}

TEST_CASE("log_gamma matches the library implementation to 2 ulp") {
  for (double x : {0.1, 0.7, 1.0 + 1e-9, 1.5, 2.0 + 1e-7, 3.75, 10.25, 41.0,
                   100.5, 12345.678, 1.0e6 + 0.5, 1.0e12 + 0.25}) {
    Real arg(x, 400);
    Real ref = mpfr_lngamma_ref(arg, 400);
    Real got = log_gamma(Real(x, 400), kCtx);
    CHECK_MESSAGE(close_rel(got, ref, 254, 1e-60), "x = ", x);
  }
}

TEST_CASE("log_gamma rejects non-positive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0, kCtx), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-3.5, kCtx), std::domain_error);
}

TEST_CASE("gamma_k closed forms at k = 1, 2 and the k = 16 window") {
  Real pi = const_pi(256);
  CHECK(close_rel(gamma_k(1, kCtx), sqrt(Real(2L, 256) / pi), 250));
  CHECK(close_rel(gamma_k(2, kCtx), sqrt(pi / 2L), 250));
  double g16 = as_double(gamma_k(16, kCtx));
  CHECK(g16 > std::sqrt(15.0));
  CHECK(g16 < 4.0);
  CHECK_THROWS_AS(gamma_k(0, kCtx), std::domain_error);
}

TEST_CASE("gamma_k two-sided window for k up to 10^4") {
  PrecisionContext fast{128};
  for (long k = 1; k <= 10000; ++k) {
    double g = as_double(gamma_k(k, fast));
    REQUIRE(g > std::sqrt(static_cast<double>(k - 1)));
    REQUIRE(g < std::sqrt(static_cast<double>(k)));
  }
}

TEST_CASE("gamma_k product identity gamma_k gamma_{k+1} = k") {
  for (long k : {1L, 2L, 3L, 10L, 100L, 4096L, 65536L}) {
    Real sum = numerics::log_gamma_k(k, kCtx) + numerics::log_gamma_k(k + 1, kCtx);
    CHECK(close_rel(sum, log(Real(k, 256)), 240, 1e-40));
  }
}

TEST_CASE("unit ball volumes: closed values and the dimension recursion") {
  Real pi = const_pi(256);
  CHECK(close_rel(log_ball_volume(1, kCtx), const_ln2(256), 250));
  CHECK(close_rel(log_ball_volume(2, kCtx), log(pi), 250));
  CHECK(close_rel(log_ball_volume(4, kCtx), log(pi * pi / 2L), 250));
  for (long m = 1; m <= 50; ++m) {
    Real lhs = log_ball_volume(m, kCtx) - log_ball_volume(m + 2, kCtx);
    Real rhs = log(Real(m + 2, 256) / (pi * 2L));
    CHECK(close_rel(lhs, rhs, 240, 1e-40));
  }
  CHECK_THROWS_AS(log_ball_volume(0, kCtx), std::domain_error);
}

TEST_CASE("doubling the precision moves results below the guard threshold") {
  for (double x : {0.3, 2.5, 1000.0, 32768.5}) {
    Real lo = log_gamma(x, PrecisionContext{256});
    Real hi = log_gamma(x, PrecisionContext{512});
    CHECK(close_rel(lo, hi.round_to(256), 248, 1e-40));
  }
  Real glo = gamma_k(65536, PrecisionContext{256});
  Real ghi = gamma_k(65536, PrecisionContext{512});
  CHECK(close_rel(glo, ghi.round_to(256), 248));
}

TEST_CASE("integer Gamma product helper telescopes correctly") {
  for (long d : {1L, 2L, 5L, 17L, 30L}) {
    Real sum(0L, 256);
    for (long j = 1; j <= d; ++j)
      sum = sum + log_gamma(Real(j, 320), PrecisionContext{320}).round_to(320);
    CHECK(close_rel(numerics::log_gamma_product_integers(d, kCtx), sum, 240,
                    1e-40));
  }
}

TEST_CASE("bit reproducibility given a fixed context") {
  Real a = log_gamma(123.456, kCtx);
  Real b = log_gamma(123.456, kCtx);
  CHECK(a == b);
}

TEST_CASE("concurrent evaluation is race-free and deterministic") {
  // 8 threads racing on a cold 640-bit context exercise concurrent growth of
  // the shared Bernoulli table
  std::vector<std::thread> workers;
  std::vector<Real> results(8);
  for (int i = 0; i < 8; ++i)
    workers.emplace_back([&results, i] {
      results[static_cast<std::size_t>(i)] =
          log_gamma(0.37, PrecisionContext{640});
    });
  for (auto& w : workers) w.join();
  Real reference = log_gamma(0.37, PrecisionContext{640});
  for (const auto& r : results) CHECK(r == reference);
}

}  // TEST_SUITE numerics

TEST_SUITE("log_real") {

TEST_CASE("multiplication adds logs exactly and signs compose") {
  LogReal a = LogReal::from_double(-3.0, 256);
  LogReal b = LogReal::from_double(2.0, 256);
  LogReal c = a * b;
  CHECK(c.sign() == -1);
  CHECK(close_rel(c.log_abs(), log(Real(6L, 256)), 250));
  CHECK((a * a).sign() == 1);
  CHECK(LogReal::zero(256).is_zero());
  CHECK((a * LogReal::zero(256)).is_zero());
}

TEST_CASE("integer powers and roots") {
  LogReal half = LogReal::from_double(0.5, 256);
  LogReal p = half.pow_int(65536);
  CHECK(close_rel(p.log_abs(), -const_ln2(256) * 65536L, 250));
  LogReal back = p.root(65536);
  CHECK(std::abs(back.to_double() - 0.5) < 1e-15);
  CHECK_THROWS_AS(LogReal::from_double(-1.0, 256).root(2), std::domain_error);
}

TEST_CASE("decimal rendering of extreme magnitudes") {
  // 8.6e-19996 assembled in log space
  Real l = log(Real(8.6, 256)) - log(Real(10L, 256)) * 19996L;
  LogReal v = LogReal::from_log(l);
  CHECK(v.decimal_exponent() == -19996);
  CHECK(std::abs(v.decimal_mantissa() - 8.6) < 1e-9);
  CHECK(v.to_decimal_string() == "8.6000E-19996");

  LogReal one = LogReal::from_double(1.0, 256);
  CHECK(one.decimal_exponent() == 0);
  CHECK(one.to_decimal_string() == "1.0000E+0");

  LogReal neg = LogReal::from_double(-0.02411446, 256);
  CHECK(neg.decimal_exponent() == -2);
  CHECK(neg.to_decimal_string() == "-2.4114E-2");
}

TEST_CASE("round trip through a plain double") {
  LogReal v = LogReal::from_double(1234.5678, 128);
  CHECK(std::abs(v.to_double() - 1234.5678) < 1e-9);
}

}  // TEST_SUITE log_real

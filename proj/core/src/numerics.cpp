#include "sepvol/numerics.hpp"

#include <gmpxx.h>

#include <mutex>
#include <vector>

namespace sepvol::numerics {

namespace {

// Bernoulli numbers B_0, B_1, ... as exact rationals, via the recurrence
// sum_{j=0}^{m} C(m+1, j) B_j = 0.  Grown lazily under a lock; values are
// returned by copy so callers never hold shared state.
class BernoulliTable {
 public:
  static mpq_class get(std::size_t n) {
    static BernoulliTable table;
    std::lock_guard<std::mutex> lock(table.mu_);
    table.grow(n);
    return table.b_[n];
  }

 private:
  BernoulliTable() { b_ = {mpq_class(1), mpq_class(-1, 2)}; }

  void grow(std::size_t n) {
    while (b_.size() <= n) {
      std::size_t m = b_.size();
      if (m % 2 == 1) {
        b_.emplace_back(0);  // B_odd = 0 for odd m >= 3
        continue;
      }
      mpq_class sum(0);
      mpz_class binom;
      for (std::size_t j = 0; j < m; ++j) {
        if (j >= 3 && j % 2 == 1) continue;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + 1),
                     static_cast<unsigned long>(j));
        sum += mpq_class(binom) * b_[j];
      }
      mpq_class bm = -sum / mpq_class(static_cast<unsigned long>(m + 1));
      bm.canonicalize();
      b_.push_back(bm);
    }
  }

  std::mutex mu_;
  std::vector<mpq_class> b_;
};

void set_from_mpq(mpfr_ptr out, const mpq_class& q) {
  mpfr_set_q(out, q.get_mpq_t(), MPFR_RNDN);
}

// Stirling asymptotic series for log Gamma at y large enough for the target
// precision:
//   (y - 1/2) log y - y + log(2 pi)/2 + sum_n B_{2n} / (2n(2n-1) y^{2n-1}).
// Terms decrease while 2n < 2 pi y; the threshold below makes the minimal
// term smaller than 2^-wp.
Real log_gamma_impl(const Real& x, long wp) {
  if (compare(x, 0.0) <= 0 || x.is_nan())
    throw std::domain_error("log_gamma: argument must be positive");

  // Shift threshold: e^{-2 pi y0} <= 2^{-wp - 16}.
  const double y0 = (static_cast<double>(wp) + 16.0) * 0.6931471805599453 /
                    (2.0 * 3.141592653589793);

  // Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)); one log at the end.
  Real y = x.round_to(wp);
  Real shift_prod(1L, wp);
  bool shifted = false;
  long shift_terms = 0;
  while (y.to_double() < y0) {
    shift_prod = shift_prod * y;
    y = y + 1L;
    shifted = true;
    if (++shift_terms > 4 * wp)
      throw std::runtime_error("log_gamma: shift failed to converge");
  }
  Real shift_log = shifted ? log(shift_prod) : Real(0L, wp);

  Real pi = const_pi(wp);
  Real result = (y - Real(0.5, wp)) * log(y) - y + log(pi * 2L) / 2L;

  Real y2 = y * y;
  Real ypow = y;  // y^{2n-1}
  Real term(0L, wp);
  Real tiny(1L, wp);
  mpfr_mul_2si(tiny.raw(), tiny.raw(), -(wp + 8), MPFR_RNDN);
  Real scale = abs(result);

  for (std::size_t n = 1; n < 10000; ++n) {
    Real coeff(wp);
    set_from_mpq(coeff.raw(), BernoulliTable::get(2 * n));
    long denom = static_cast<long>(2 * n) * static_cast<long>(2 * n - 1);
    term = coeff / (ypow * denom);
    result = result + term;
    if (abs(term) < tiny * scale) break;
    ypow = ypow * y2;
  }

  return result - shift_log;
}

}  // namespace

Real log_gamma(const Real& x, PrecisionContext ctx) {
  ctx.validate();
  return log_gamma_impl(x, ctx.working_bits()).round_to(ctx.mantissa_bits);
}

Real log_gamma(double x, PrecisionContext ctx) {
  ctx.validate();
  return log_gamma(Real(x, ctx.working_bits()), ctx);
}

Real log_gamma_k(long k, PrecisionContext ctx) {
  ctx.validate();
  if (k < 1) throw std::domain_error("gamma_k: k must be >= 1");
  long wp = ctx.working_bits();
  Real half_k(k, wp);
  half_k = half_k / 2L;
  Real half_k1(k + 1, wp);
  half_k1 = half_k1 / 2L;
  Real r = const_ln2(wp) / 2L + log_gamma_impl(half_k1, wp) -
           log_gamma_impl(half_k, wp);
  return r.round_to(ctx.mantissa_bits);
}

Real gamma_k(long k, PrecisionContext ctx) {
  ctx.validate();
  return exp(log_gamma_k(k, PrecisionContext(ctx.working_bits())))
      .round_to(ctx.mantissa_bits);
}

Real log_ball_volume(long m, PrecisionContext ctx) {
  ctx.validate();
  if (m < 1) throw std::domain_error("log_ball_volume: dimension must be >= 1");
  long wp = ctx.working_bits();
  Real half_m(m, wp);
  half_m = half_m / 2L;
  Real r = half_m * log(const_pi(wp)) - log_gamma_impl(half_m + 1L, wp);
  return r.round_to(ctx.mantissa_bits);
}

Real log_gamma_product_integers(long d, PrecisionContext ctx) {
  ctx.validate();
  if (d < 1)
    throw std::domain_error("log_gamma_product_integers: d must be >= 1");
  long wp = ctx.working_bits();
  Real sum(0L, wp);
  for (long k = 2; k < d; ++k) sum = sum + log(Real(k, wp)) * (d - k);
  return sum.round_to(ctx.mantissa_bits);
}

}  // namespace sepvol::numerics

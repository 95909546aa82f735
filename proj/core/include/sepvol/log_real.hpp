#pragma once

#include <optional>
#include <string>

#include "sepvol/precision.hpp"

namespace sepvol {

// Signed real number stored as (sign, log of absolute value).  This is the
// carrier for volumes and volume ratios, whose magnitudes (10^-19996 and the
// like) overflow any fixed-precision float.  Multiplication is exact addition
// of the log fields.
class LogReal {
 public:
  LogReal() : LogReal(0, Real(0L, 64)) {}

  // Zero value; log_abs is unused while sign == 0.
  static LogReal zero(long prec) { return LogReal(0, Real(0L, prec)); }

  static LogReal from_log(const Real& log_abs, int sign = 1) {
    return LogReal(sign >= 0 ? 1 : -1, log_abs);
  }

  static LogReal from_real(const Real& x) {
    int c = compare(x, 0.0);
    if (c == 0) return zero(x.prec());
    return LogReal(c > 0 ? 1 : -1, log(abs(x)));
  }

  static LogReal from_double(double x, long prec) {
    return from_real(Real(x, prec));
  }

  int sign() const { return sign_; }
  const Real& log_abs() const { return log_abs_; }

  bool is_zero() const { return sign_ == 0; }

  LogReal operator*(const LogReal& o) const {
    if (is_zero() || o.is_zero())
      return zero(log_abs_.prec() > o.log_abs_.prec() ? log_abs_.prec()
                                                      : o.log_abs_.prec());
    return LogReal(sign_ * o.sign_, log_abs_ + o.log_abs_);
  }

  LogReal operator/(const LogReal& o) const {
    if (o.is_zero()) throw std::domain_error("LogReal: division by zero");
    if (is_zero()) return *this;
    return LogReal(sign_ * o.sign_, log_abs_ - o.log_abs_);
  }

  // x^e for integer e (sign handled for odd/even exponents).
  LogReal pow_int(long e) const {
    if (is_zero()) {
      if (e <= 0) throw std::domain_error("LogReal: 0 to non-positive power");
      return *this;
    }
    int s = (sign_ < 0 && (e % 2 != 0)) ? -1 : 1;
    return LogReal(s, log_abs_ * e);
  }

  // x^(1/r) for positive integer r; requires a positive value.
  LogReal root(long r) const {
    if (r <= 0) throw std::domain_error("LogReal: root index must be positive");
    if (is_zero()) return *this;
    if (sign_ < 0) throw std::domain_error("LogReal: root of negative value");
    return LogReal(1, log_abs_ / r);
  }

  // May underflow to 0 or overflow to +-inf; intended for display and for
  // moderately scaled quantities only.
  double to_double() const {
    if (is_zero()) return 0.0;
    double v = exp(log_abs_).to_double();
    return sign_ < 0 ? -v : v;
  }

  // log10 of |x| as a Real.
  Real log10_abs() const {
    if (is_zero()) throw std::domain_error("LogReal: log10 of zero");
    long p = log_abs_.prec();
    return log_abs_ / log(Real(10L, p));
  }

  // floor(log10 |x|), the decimal exponent e with |x| = m * 10^e, m in [1,10).
  long decimal_exponent() const;

  // Mantissa in [1, 10) paired with decimal_exponent().
  double decimal_mantissa() const;

  // "m.mmmmE±eeee" with 4 mantissa digits after the point.
  std::string to_decimal_string() const;

 private:
  LogReal(int sign, Real log_abs) : sign_(sign), log_abs_(std::move(log_abs)) {}

  int sign_ = 0;
  Real log_abs_;
};

}  // namespace sepvol

#include "sepvol/log_real.hpp"

#include <cmath>
#include <cstdio>

namespace sepvol {

long LogReal::decimal_exponent() const {
  Real l10 = log10_abs();
  Real fl = floor(l10);
  return static_cast<long>(fl.to_double());
}

double LogReal::decimal_mantissa() const {
  Real l10 = log10_abs();
  Real frac = l10 - floor(l10);
  double m = pow(Real(10L, l10.prec()), frac).to_double();
  if (m >= 10.0) m = 9.999999999;  // guard against rounding at the boundary
  if (m < 1.0) m = 1.0;
  return m;
}

std::string LogReal::to_decimal_string() const {
  if (is_zero()) return "0.0000E+0";
  long e = decimal_exponent();
  double m = decimal_mantissa();
  // Rounding the mantissa to 4 places may carry it to 10.0000.
  if (m >= 9.99995) {
    m /= 10.0;
    e += 1;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%.4fE%+ld", sign_ < 0 ? "-" : "", m, e);
  return buf;
}

}  // namespace sepvol

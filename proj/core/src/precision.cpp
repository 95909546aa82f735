#include "sepvol/precision.hpp"

#include <cstdio>
#include <vector>

namespace sepvol {

std::string Real::to_string(int digits) const {
  char fmt[32];
  std::snprintf(fmt, sizeof(fmt), "%%.%dRg", digits);
  char* out = nullptr;
  if (mpfr_asprintf(&out, fmt, v_) < 0) return "<mpfr-error>";
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

#define SEPVOL_UNARY(name, mpfr_fn)          \
  Real name(const Real& x) {                 \
    Real r(x.prec());                        \
    mpfr_fn(r.raw(), x.raw(), MPFR_RNDN);    \
    return r;                                \
  }

SEPVOL_UNARY(sqrt, mpfr_sqrt)
SEPVOL_UNARY(exp, mpfr_exp)
SEPVOL_UNARY(log, mpfr_log)
SEPVOL_UNARY(log1p, mpfr_log1p)
SEPVOL_UNARY(sin, mpfr_sin)
SEPVOL_UNARY(cos, mpfr_cos)
SEPVOL_UNARY(abs, mpfr_abs)

#undef SEPVOL_UNARY

Real floor(const Real& x) {
  Real r(x.prec());
  mpfr_rint(r.raw(), x.raw(), MPFR_RNDD);
  return r;
}

Real pow(const Real& x, long e) {
  Real r(x.prec());
  mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& e) {
  Real r(x.prec() > e.prec() ? x.prec() : e.prec());
  mpfr_pow(r.raw(), x.raw(), e.raw(), MPFR_RNDN);
  return r;
}

Real const_pi(long prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real const_ln2(long prec) {
  Real r(prec);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

Real const_e(long prec) {
  Real one(1L, prec);
  return exp(one);
}

bool close_rel(const Real& a, const Real& b, long bits, double floor_abs) {
  long p = a.prec() > b.prec() ? a.prec() : b.prec();
  Real diff = abs(a - b);
  Real scale = abs(a);
  if (abs(b) > scale) scale = abs(b);
  if (compare(scale, floor_abs) < 0) scale = Real(floor_abs, p);
  Real tol(1L, p);
  mpfr_mul_2si(tol.raw(), tol.raw(), -bits, MPFR_RNDN);
  return diff <= tol * scale;
}

}  // namespace sepvol

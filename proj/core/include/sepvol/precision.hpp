#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sepvol {

// Carrier of the working precision for all arbitrary-precision real
// arithmetic.  Two calls with the same context and the same inputs are
// bit-reproducible (MPFR round-to-nearest throughout).
struct PrecisionContext {
  long mantissa_bits = 256;

  constexpr explicit PrecisionContext(long bits = 256) : mantissa_bits(bits) {}

  void validate() const {
    if (mantissa_bits < 64)
      throw std::domain_error("PrecisionContext: mantissa_bits must be >= 64");
  }

  // Internal working precision: results are computed with guard bits and
  // rounded back to mantissa_bits on return.
  long working_bits() const { return mantissa_bits + 64; }
};

// Value-semantic arbitrary-precision real on top of mpfr_t.  Every value
// carries its own precision; binary operations compute at the larger of the
// two operand precisions.
class Real {
 public:
  Real() : Real(64L) {}
  explicit Real(long prec) {
    mpfr_init2(v_, check_prec(prec));
    mpfr_set_nan(v_);
  }
  Real(double x, long prec) {
    mpfr_init2(v_, check_prec(prec));
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(long x, long prec) {
    mpfr_init2(v_, check_prec(prec));
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(double x, PrecisionContext ctx) : Real(x, ctx.mantissa_bits) {}
  Real(long x, PrecisionContext ctx) : Real(x, ctx.mantissa_bits) {}

  static Real from_string(std::string_view s, long prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, std::string(s).c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("Real::from_string: cannot parse '" +
                                  std::string(s) + "'");
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  long prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }

  // Rounds to a (usually lower) target precision.
  Real round_to(long prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  std::string to_string(int digits = 20) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, long b) { return a + Real(b, a.prec()); }
  friend Real operator-(const Real& a, long b) { return a - Real(b, a.prec()); }
  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator-(long a, const Real& b) { return Real(a, b.prec()) - b; }

  friend bool operator<(const Real& a, const Real& b) {
    return mpfr_cmp(a.v_, b.v_) < 0;
  }
  friend bool operator>(const Real& a, const Real& b) {
    return mpfr_cmp(a.v_, b.v_) > 0;
  }
  friend bool operator<=(const Real& a, const Real& b) {
    return mpfr_cmp(a.v_, b.v_) <= 0;
  }
  friend bool operator>=(const Real& a, const Real& b) {
    return mpfr_cmp(a.v_, b.v_) >= 0;
  }
  friend bool operator==(const Real& a, const Real& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend int compare(const Real& a, double b) { return mpfr_cmp_d(a.v_, b); }

 private:
  static long check_prec(long prec) {
    if (prec < 2) throw std::domain_error("Real: precision must be >= 2 bits");
    return prec;
  }
  static long join(const Real& a, const Real& b) {
    return a.prec() > b.prec() ? a.prec() : b.prec();
  }
  mpfr_t v_;
};

// Elementary functions, result at the argument's precision.
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real abs(const Real& x);
Real floor(const Real& x);
Real pow(const Real& x, long e);
Real pow(const Real& x, const Real& e);

// Constants at the requested precision.
Real const_pi(long prec);
Real const_ln2(long prec);
Real const_e(long prec);

// |a - b| <= 2^-bits * max(|a|, |b|, floor_abs)
bool close_rel(const Real& a, const Real& b, long bits,
               double floor_abs = 0.0);

}  // namespace sepvol

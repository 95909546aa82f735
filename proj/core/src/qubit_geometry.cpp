#include "sepvol/qubit_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace sepvol::qubit {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
const std::complex<double> kI{0.0, 1.0};
}  // namespace

double PauliVector::norm() const {
  double s = 0;
  for (double c : coords) s += c * c;
  return std::sqrt(s);
}

SystemParams SystemParams::for_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 31)
    throw std::domain_error("SystemParams: qubit count must be in 1..31");
  SystemParams p;
  p.qubits = n_qubits;
  p.d = std::int64_t{1} << n_qubits;
  p.n = p.d * p.d - 1;
  p.alpha = std::log2(27.0 / 16.0) / 8.0;
  return p;
}

Real alpha_qubit(PrecisionContext ctx) {
  ctx.validate();
  long wp = ctx.working_bits();
  Real r = log(Real(27L, wp) / Real(16L, wp)) / const_ln2(wp) / 8L;
  return r.round_to(ctx.mantissa_bits);
}

bool is_hermitian(const HermitianMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

PauliVector pauli_decompose(const HermitianMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2)
    throw std::invalid_argument("pauli_decompose: matrix must be 2x2");
  PauliVector v;
  v.coords[0] = (m(0, 0).real() + m(1, 1).real()) / kSqrt2;
  v.coords[1] = (m(0, 1).real() + m(1, 0).real()) / kSqrt2;
  v.coords[2] = (m(1, 0).imag() - m(0, 1).imag()) / kSqrt2;
  v.coords[3] = (m(0, 0).real() - m(1, 1).real()) / kSqrt2;
  return v;
}

HermitianMatrix pauli_recompose(const PauliVector& v) {
  HermitianMatrix m(2, 2);
  const auto& c = v.coords;
  m(0, 0) = (c[0] + c[3]) / kSqrt2;
  m(1, 1) = (c[0] - c[3]) / kSqrt2;
  m(0, 1) = (c[1] - kI * c[2]) / kSqrt2;
  m(1, 0) = (c[1] + kI * c[2]) / kSqrt2;
  return m;
}

PauliVector apply_balancing(const PauliVector& v) {
  const double s = std::sqrt(1.5);
  return PauliVector{{v.coords[0] / kSqrt2, s * v.coords[1], s * v.coords[2],
                      s * v.coords[3]}};
}

PauliVector apply_balancing_inverse(const PauliVector& v) {
  const double s = std::sqrt(1.5);
  return PauliVector{{v.coords[0] * kSqrt2, v.coords[1] / s, v.coords[2] / s,
                      v.coords[3] / s}};
}

Real log_det_balancing_tensor(int n_qubits, PrecisionContext ctx) {
  ctx.validate();
  if (n_qubits < 1)
    throw std::domain_error("log_det_balancing_tensor: need N >= 1");
  if (n_qubits > 30)
    throw std::domain_error("log_det_balancing_tensor: N too large");
  long wp = ctx.working_bits();
  // exponent N * 4^{N-1} fits in 64 bits for N <= 30
  long exponent = n_qubits * (std::int64_t{1} << (2 * (n_qubits - 1)));
  Real log_det_single = log(Real(27L, wp) / Real(16L, wp)) / 2L;
  return (log_det_single * exponent).round_to(ctx.mantissa_bits);
}

double modified_inner_product(const HermitianMatrix& u,
                              const HermitianMatrix& v) {
  if (u.rows() != 2 || u.cols() != 2 || v.rows() != 2 || v.cols() != 2)
    throw std::invalid_argument("modified_inner_product: matrices must be 2x2");
  double tr_uv = (u * v).trace().real();
  double tr_u = u.trace().real();
  double tr_v = v.trace().real();
  return (3.0 * tr_uv - tr_u * tr_v) / 2.0;
}

HermitianMatrix bloch_state(double x, double y, double z) {
  HermitianMatrix m(2, 2);
  m(0, 0) = (1.0 + z) / 2.0;
  m(1, 1) = (1.0 - z) / 2.0;
  m(0, 1) = (x - kI * y) / 2.0;
  m(1, 0) = (x + kI * y) / 2.0;
  return m;
}

std::array<HermitianMatrix, 4> tetrahedron_basis() {
  const double s = 1.0 / std::sqrt(3.0);
  const double w[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  std::array<HermitianMatrix, 4> basis;
  for (int j = 0; j < 4; ++j) {
    HermitianMatrix rho = bloch_state(w[j][0], w[j][1], w[j][2]);
    basis[j] = pauli_recompose(apply_balancing(pauli_decompose(rho)));
  }
  return basis;
}

Real alpha_exponent(long dim, PrecisionContext ctx) {
  ctx.validate();
  if (dim < 2) throw std::domain_error("alpha_exponent: dimension must be >= 2");
  long wp = ctx.working_bits();
  Real d(dim, wp);
  Real log_d = log(d);
  // det of the balancing map: (1/sqrt D) * ((D+1)/D)^{(D^2-1)/2}
  Real log_det =
      log(d + 1L) - log_d;        // log((D+1)/D)
  log_det = log_det * (dim * dim - 1) / 2L - log_d / 2L;
  Real r = log_det / (log_d * (dim * dim));
  return r.round_to(ctx.mantissa_bits);
}

}  // namespace sepvol::qubit

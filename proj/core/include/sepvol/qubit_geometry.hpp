#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>

#include "sepvol/precision.hpp"

namespace sepvol::qubit {

using HermitianMatrix = Eigen::MatrixXcd;

// Coordinates of a 2x2 Hermitian matrix in the orthonormal basis
// {I/sqrt2, sigma_x/sqrt2, sigma_y/sqrt2, sigma_z/sqrt2}.  The Hilbert-Schmidt
// norm of the matrix equals the Euclidean norm of the coordinates.
struct PauliVector {
  std::array<double, 4> coords{};

  double norm() const;
};

// Parameter bundle for an N-qubit system: d = 2^N, n = d^2 - 1, and the
// balancing exponent alpha = log2(27/16)/8 (so that d^{1/2+alpha} = 3^{3N/8}).
struct SystemParams {
  int qubits = 0;
  std::int64_t d = 0;
  std::int64_t n = 0;
  double alpha = 0.0;

  static SystemParams for_qubits(int n_qubits);
};

// alpha = log2(27/16)/8 at ctx precision.
Real alpha_qubit(PrecisionContext ctx = PrecisionContext());

bool is_hermitian(const HermitianMatrix& m, double tol = 1e-12);

PauliVector pauli_decompose(const HermitianMatrix& m);
HermitianMatrix pauli_recompose(const PauliVector& v);

// The balancing map: identity coordinate scaled by 1/sqrt2, the three Pauli
// coordinates by sqrt(3/2).  Maps the Bloch sphere onto a 2-sphere of radius
// sqrt(3)/2 inside the unit Hilbert-Schmidt sphere.
PauliVector apply_balancing(const PauliVector& v);
PauliVector apply_balancing_inverse(const PauliVector& v);

// log det of the N-fold tensor power of the balancing map:
// N * 4^{N-1} * log sqrt(27/16); equals alpha * d^2 * log d with d = 2^N.
Real log_det_balancing_tensor(int n_qubits,
                              PrecisionContext ctx = PrecisionContext());

// (3 tr(uv) - tr u tr v) / 2: the inner product induced by the balancing map,
// equal to the Hilbert-Schmidt product of the balanced images.
double modified_inner_product(const HermitianMatrix& u,
                              const HermitianMatrix& v);

// Balanced images of the four pure states whose Bloch vectors form the
// regular tetrahedron (1,1,1),(1,-1,-1),(-1,1,-1),(-1,-1,1)/sqrt3.  The four
// matrices form an orthonormal basis of the 2x2 Hermitian space.
std::array<HermitianMatrix, 4> tetrahedron_basis();

// Pure state with the given Bloch vector (must be unit length).
HermitianMatrix bloch_state(double x, double y, double z);

// Balancing exponent for qudits of dimension D: the identity direction is
// scaled by 1/sqrt(D) and the traceless directions by sqrt((D+1)/D);
// alpha_D = log(det) / (D^2 log D).  Reduces to alpha_qubit at D = 2 and
// behaves as 1/(2 D log D) for large D.
Real alpha_exponent(long dim, PrecisionContext ctx = PrecisionContext());

}  // namespace sepvol::qubit

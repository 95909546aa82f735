#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "sepvol/mc.hpp"
#include "sepvol/precision.hpp"

namespace sepvol::gue {

// Normalized even moments of the Gaussian Hermitian ensemble:
//   a_p = d^{-1} E tr((G / (2 sqrt d))^{2p}),
// so a_0 = 1 and a_1 = 1/4 for every d, and the recursion
//   a_p = (2p-1)/(2p+2) * (a_{p-1} + p(p-1)/(4d^2) * (2p-3)/(2p) * a_{p-2})
// holds exactly.  Computed in exact rational arithmetic for d <= 64 and
// p_max <= 64, in ctx-precision floats otherwise.
struct GueMomentTable {
  long d = 0;
  std::vector<Real> a;
};

GueMomentTable moment_table(long d, int p_max,
                            PrecisionContext ctx = PrecisionContext());

// Closed-form upper bound for a_p:
//   (1 / (2^{2p} (p+1))) * C(2p, p) * prod_{j=1}^{p} (1 + j(j-1)/(4 d^2)).
Real catalan_product_bound(long d, int p,
                           PrecisionContext ctx = PrecisionContext());

// Default moment depth: keeps the optimizing p ~ 1.383 d^{2/3} in range.
int default_p_max(long d);

// Upper bound for E |G|_op obtained by minimizing (E tr G^{2p})^{1/2p}
// = 2 sqrt(d) (d a_p)^{1/2p} over integer p.  Strictly below 2 sqrt(d) for
// every d >= 1; divided by sqrt(d) it stays below 2 - 0.6 d^{-2/3}.
Real norm_bound_discrete(long d, PrecisionContext ctx = PrecisionContext(),
                         int p_max = 0);

struct AnalyticNormBound {
  Real t_star;   // unconstrained minimizer of f
  Real f_min;    // f(t_star)
  Real bound;    // 2 sqrt(d) f(t)^{1/d^{2/3}} at the admissible integer p
  long p = 0;    // the integer p used for the bound
};

// f(t) = (e^{t^3/6} / (pi t^3))^{1/4t}, minimized over t > 0; the minimum
// sits near t = 1.383 with value about 0.7385 < e^{-0.3}.
AnalyticNormBound norm_bound_analytic(long d,
                                      PrecisionContext ctx = PrecisionContext());

// Hermitian matrix with the standard Gaussian distribution in the
// Hilbert-Schmidt geometry: diagonal N(0,1), off-diagonal with independent
// N(0,1/2) real and imaginary parts.  Bit-deterministic given (d, seed).
Eigen::MatrixXcd sample_gue(long d, std::uint64_t seed);

// Draws repeatedly from an existing stream (used by the MC estimators).
Eigen::MatrixXcd sample_gue(long d, mc::GaussianRng& rng);

double op_norm(const Eigen::MatrixXcd& m);
double hs_norm(const Eigen::MatrixXcd& m);

// MC estimate of the normalized moment a_p (for cross-checking the
// recursion against sampling).
mc::McEstimate moment_mc_estimate(long d, int p, std::int64_t samples,
                                  std::uint64_t seed);

struct MeanWidthResult {
  Real bound;          // norm_bound_discrete(d) / gamma_{d^2}
  mc::McEstimate mc;   // sphere average of the operator norm
};

// Mean half-width of the trace-norm unit ball: the sphere integral of the
// operator norm, bounded through E |G|_op = gamma_{d^2} * integral.
MeanWidthResult mean_width_trace_ball(long d, std::int64_t samples,
                                      std::uint64_t seed,
                                      PrecisionContext ctx = PrecisionContext());

}  // namespace sepvol::gue

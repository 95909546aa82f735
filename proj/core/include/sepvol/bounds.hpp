#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sepvol/log_real.hpp"
#include "sepvol/nets.hpp"
#include "sepvol/precision.hpp"

namespace sepvol::bounds {

using InputValue = std::variant<long, double, std::string, bool>;

// Structured record of a computed bound.  JSON field order is fixed:
// quantity, lower_log_e, upper_log_e, per_dim, decimal_exponent,
// equation_tags, inputs, precision_bits.
struct BoundReport {
  std::string quantity;
  std::optional<LogReal> lower;
  std::optional<LogReal> upper;
  double per_dim = 0.0;
  std::vector<std::string> equation_tags;
  std::vector<std::pair<std::string, InputValue>> inputs;
  long precision_bits = 0;

  // Decimal exponent of the binding member (upper when present, else lower).
  std::optional<long> decimal_exponent() const;
  const std::optional<LogReal>& binding() const {
    return upper.has_value() ? upper : lower;
  }

  void check() const;  // lower <= upper whenever both are present
};

std::string report_to_json(const BoundReport& report, int indent = -1);
std::string reports_to_json(const std::vector<BoundReport>& reports,
                            int indent = -1);
std::string report_to_csv_row(const BoundReport& report);
std::string report_to_text(const BoundReport& report);
extern const char* const kReportCsvHeader;

// Rogers-Shephard transfer between a convex set and its symmetrization:
// 2h vol W <= vol conv(-W u W) <= 2h 2^n/(n+1) vol W with h = 1/sqrt(d)
// and n = d^2 - 1 here.
struct SymmetrizationFactor {
  Real log_ratio_factor;     // log(2^n / (n+1))
  Real log_distance_factor;  // log(2 / sqrt d), d = sqrt(n+1)
};
SymmetrizationFactor symmetrization_factor(
    long n, PrecisionContext ctx = PrecisionContext());

// Volume radius of the trace-norm unit ball relative to the
// Hilbert-Schmidt ball: 1/sqrt(d) from the norm inclusions, upper bound
// from the mean width (never worse than 2/sqrt(d)).
struct TraceBallVr {
  Real lower;          // 1/sqrt d
  Real upper;          // min(2/sqrt d, mean-width bound)
  Real urysohn_upper;  // norm_bound_discrete(d) / gamma_{d^2}
};
TraceBallVr vr_trace_ball_bounds(long d,
                                 PrecisionContext ctx = PrecisionContext());

// Volume radius of the symmetrized separable body relative to B_HS.
struct SeparableVr {
  Real lower;                     // 1 / d^{1+alpha}
  Real upper_closed;              // sqrt(4N log2(4N)) / d^{1+alpha}
  std::optional<Real> upper_net;  // d^{-alpha} tensor net bound / gamma_{d^2}
};
SeparableVr vr_separable_bounds(
    int n_qubits, const std::optional<nets::NetTableRow>& row = std::nullopt,
    PrecisionContext ctx = PrecisionContext());

// The headline two-sided bound on (vol S / vol D)^{1/dim}: lower c/3^{3N/8}
// (c = 1/4 basic, sqrt(e/8pi) refined), upper 4 sqrt(N log2 4N)/3^{3N/8}.
struct RatioBounds {
  int n_qubits = 0;
  Real lower_basic;
  Real lower_refined;
  Real upper;
};
RatioBounds ratio_bounds(int n_qubits, PrecisionContext ctx = PrecisionContext());

// Smallest N whose ratio_bounds upper member drops below 1.
int first_nontrivial_qubits(PrecisionContext ctx = PrecisionContext());

// Closed-form log volume of the set of states on C^d:
// log(sqrt(d) (2 pi)^{d(d-1)/2} prod_j Gamma(j) / Gamma(d^2)).
LogReal log_volume_state_set(long d, PrecisionContext ctx = PrecisionContext());

// Volume radius of the state set in its own dimension d^2 - 1; approaches
// e^{-1/4}/sqrt(d) for large d.
Real state_set_volume_radius(long d, PrecisionContext ctx = PrecisionContext());

// Certified net-based upper-bound chain for vol S / vol D at N qubits.
struct SeparablePipeline {
  int n_qubits = 0;
  nets::NetTableRow row;
  Real net_bound;            // tensorized Gaussian max bound
  Real upsilon;              // (16/27)^{N/8} net_bound / gamma_{d^2}
  LogReal log_vol_sep_upper; // (sqrt d / 2) upsilon^{d^2} vol B_HS
  LogReal log_ratio_upper;   // against the closed-form state-set volume
  Real per_dim;              // ratio^{1/(d^2-1)}
};
SeparablePipeline separable_ratio_pipeline(
    int n_qubits, const nets::NetTableRow& row,
    PrecisionContext ctx = PrecisionContext());

// Limits of the two-sided constants for large N, and the refined lower
// constant: e^{3/4}/sqrt(2 pi), e^{1/4} sqrt(2/log 2), sqrt(e/(8 pi)).
struct AsymptoticConstants {
  Real lower_limit;
  Real upper_limit;
  Real refined_lower;
};
AsymptoticConstants asymptotic_constants(
    PrecisionContext ctx = PrecisionContext());

// In-radius bracket for the symmetrized separable body, with the exponents
// used for comparisons in the literature.
struct InradiusReport {
  int n_qubits = 0;
  Real sigma_lower;          // 6^{-N/2}
  Real state_set_inradius;   // 1/sqrt(d(d-1)), the reference upper bound
  double volumetric_upper_exponent = 0.0;  // 1 + alpha
  double sigma_lower_exponent = 0.0;       // log 6 / log 4
  double literature_eta[2] = {0.0, 0.0};   // {log 20 / log 4, 3/2}
  double literature_beta[2] = {0.0, 0.0};  // {log 10 / log 4, 1}
};
InradiusReport inradius_report(int n_qubits,
                               PrecisionContext ctx = PrecisionContext());

// Net-based bound for N qudits of local dimension D, with per-factor nets
// of cardinality (c_prime/delta)^{2D-2} on the pure-state manifold.  When
// delta is not given it is optimized over (0, 1).
struct QuditBound {
  long local_dim = 0;
  int copies = 0;
  double c_prime = 0.0;
  bool c_prime_defaulted = false;
  Real alpha_d;
  double delta = 0.0;
  Real upsilon;
  LogReal log_ratio_upper;
  Real per_dim;
};
QuditBound qudit_bound(long local_dim, int copies,
                       std::optional<double> c_prime = std::nullopt,
                       PrecisionContext ctx = PrecisionContext(),
                       std::optional<double> delta = std::nullopt);

// Default placeholder for the unspecified net constant; reports carry a
// warning flag whenever it is used.
inline constexpr double kDefaultQuditNetConstant = 3.0;

// Report builders for the CLI.
BoundReport ratio_bounds_report(const RatioBounds& rb, PrecisionContext ctx);
BoundReport trace_ball_report(long d, const TraceBallVr& vr,
                              PrecisionContext ctx);
BoundReport separable_vr_report(int n_qubits, const SeparableVr& vr,
                                PrecisionContext ctx);
BoundReport pipeline_report(const SeparablePipeline& p, PrecisionContext ctx);
BoundReport state_set_volume_report(long d, PrecisionContext ctx);
BoundReport inradius_to_report(const InradiusReport& r, PrecisionContext ctx);
BoundReport qudit_to_report(const QuditBound& q, PrecisionContext ctx);

}  // namespace sepvol::bounds

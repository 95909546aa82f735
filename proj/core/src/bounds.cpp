#include "sepvol/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sepvol/gue.hpp"
#include "sepvol/numerics.hpp"
#include "sepvol/qubit_geometry.hpp"

namespace sepvol::bounds {

namespace {

long pow2_checked(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 31)
    throw std::domain_error("qubit count must be in 1..31");
  return 1L << n_qubits;
}

long checked_square(long d) {
  if (d < 1 || d > 3037000499L)
    throw std::domain_error("dimension too large: d^2 overflows");
  return d * d;
}

int cmp_logreal(const LogReal& a, const LogReal& b) {
  // Orders by value; assumes the usual sign conventions.
  if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
  if (a.sign() == 0) return 0;
  int c = a.log_abs() < b.log_abs() ? -1 : (a.log_abs() > b.log_abs() ? 1 : 0);
  return a.sign() > 0 ? c : -c;
}

}  // namespace

std::optional<long> BoundReport::decimal_exponent() const {
  const auto& b = binding();
  if (!b.has_value() || b->is_zero()) return std::nullopt;
  return b->decimal_exponent();
}

void BoundReport::check() const {
  if (lower.has_value() && upper.has_value() &&
      cmp_logreal(*lower, *upper) > 0)
    throw std::logic_error("BoundReport '" + quantity +
                           "': lower exceeds upper");
}

SymmetrizationFactor symmetrization_factor(long n, PrecisionContext ctx) {
  ctx.validate();
  if (n < 1) throw std::domain_error("symmetrization_factor: n must be >= 1");
  long wp = ctx.working_bits();
  Real log_np1 = log(Real(n + 1, wp));
  SymmetrizationFactor out;
  out.log_ratio_factor =
      (const_ln2(wp) * n - log_np1).round_to(ctx.mantissa_bits);
  out.log_distance_factor =
      (const_ln2(wp) - log_np1 / 4L).round_to(ctx.mantissa_bits);
  return out;
}

TraceBallVr vr_trace_ball_bounds(long d, PrecisionContext ctx) {
  ctx.validate();
  if (d < 2) throw std::domain_error("vr_trace_ball_bounds: d must be >= 2");
  long wp = ctx.working_bits();
  PrecisionContext wctx(wp);
  long d2 = checked_square(d);
  TraceBallVr out;
  Real inv_sqrt_d = exp(-log(Real(d, wp)) / 2L);
  out.lower = inv_sqrt_d.round_to(ctx.mantissa_bits);
  Real urysohn = gue::norm_bound_discrete(d, wctx) /
                 exp(numerics::log_gamma_k(d2, wctx));
  out.urysohn_upper = urysohn.round_to(ctx.mantissa_bits);
  Real cap = inv_sqrt_d * 2L;
  out.upper = (urysohn < cap ? urysohn : cap).round_to(ctx.mantissa_bits);
  return out;
}

SeparableVr vr_separable_bounds(int n_qubits,
                                const std::optional<nets::NetTableRow>& row,
                                PrecisionContext ctx) {
  ctx.validate();
  if (n_qubits < 2)
    throw std::domain_error("vr_separable_bounds: N must be >= 2");
  long wp = ctx.working_bits();
  PrecisionContext wctx(wp);
  long d = pow2_checked(n_qubits);
  long d2 = checked_square(d);

  SeparableVr out;
  Real alpha = qubit::alpha_qubit(wctx);
  Real log_lower = -(alpha + 1L) * const_ln2(wp) * n_qubits;
  out.lower = exp(log_lower).round_to(ctx.mantissa_bits);

  // sqrt(4N log2(4N)) / d^{1+alpha}
  Real log2_4n = log(Real(4L * n_qubits, wp)) / const_ln2(wp);
  out.upper_closed = (sqrt(log2_4n * (4L * n_qubits)) * exp(log_lower))
                         .round_to(ctx.mantissa_bits);

  if (row.has_value()) {
    if (!row->usable())
      throw std::domain_error(
          "vr_separable_bounds: net row rejected (delta not in (0, sqrt 2))");
    Real balance = exp(log(Real(16L, wp) / Real(27L, wp)) * n_qubits / 8L);
    Real net = nets::tensor_net_bound(n_qubits, row->m, row->delta, wctx);
    Real gamma = exp(numerics::log_gamma_k(d2, wctx));
    out.upper_net = (balance * net / gamma).round_to(ctx.mantissa_bits);
  }
  return out;
}

RatioBounds ratio_bounds(int n_qubits, PrecisionContext ctx) {
  ctx.validate();
  if (n_qubits < 2) throw std::domain_error("ratio_bounds: N must be >= 2");
  long wp = ctx.working_bits();
  RatioBounds out;
  out.n_qubits = n_qubits;
  // d^{1/2+alpha} = 3^{3N/8}
  Real denom = exp(log(Real(3L, wp)) * (3L * n_qubits) / 8L);
  out.lower_basic = (Real(0.25, wp) / denom).round_to(ctx.mantissa_bits);
  Real pi = const_pi(wp);
  out.lower_refined =
      (sqrt(const_e(wp) / (pi * 8L)) / denom).round_to(ctx.mantissa_bits);
  Real log2_4n = log(Real(4L * n_qubits, wp)) / const_ln2(wp);
  out.upper = (sqrt(log2_4n * n_qubits) * 4L / denom).round_to(ctx.mantissa_bits);
  return out;
}

int first_nontrivial_qubits(PrecisionContext ctx) {
  for (int n = 2; n <= 64; ++n) {
    if (compare(ratio_bounds(n, ctx).upper, 1.0) < 0) return n;
  }
  throw std::logic_error("first_nontrivial_qubits: not found below 65");
}

LogReal log_volume_state_set(long d, PrecisionContext ctx) {
  ctx.validate();
  if (d < 2) throw std::domain_error("log_volume_state_set: d must be >= 2");
  long wp = ctx.working_bits();
  PrecisionContext wctx(wp);
  long d2 = checked_square(d);
  Real two_pi = const_pi(wp) * 2L;
  Real r = log(Real(d, wp)) / 2L + log(two_pi) * (d * (d - 1) / 2) +
           numerics::log_gamma_product_integers(d, wctx) -
           numerics::log_gamma(Real(d2, wp), wctx);
  return LogReal::from_log(r.round_to(ctx.mantissa_bits));
}

Real state_set_volume_radius(long d, PrecisionContext ctx) {
  ctx.validate();
  long wp = ctx.working_bits();
  PrecisionContext wctx(wp);
  long n = checked_square(d) - 1;
  Real log_vr = (log_volume_state_set(d, wctx).log_abs() -
                 numerics::log_ball_volume(n, wctx)) /
                n;
  return exp(log_vr).round_to(ctx.mantissa_bits);
}

SeparablePipeline separable_ratio_pipeline(int n_qubits,
                                           const nets::NetTableRow& row,
                                           PrecisionContext ctx) {
  ctx.validate();
  if (n_qubits < 2)
    throw std::domain_error("separable_ratio_pipeline: N must be >= 2");
  if (!row.usable())
    throw std::domain_error(
        "separable_ratio_pipeline: net row rejected (delta not in (0, sqrt 2))");
  long wp = ctx.working_bits();
  PrecisionContext wctx(wp);
  long d = pow2_checked(n_qubits);
  long d2 = checked_square(d);

  SeparablePipeline out;
  out.n_qubits = n_qubits;
  out.row = row;
  Real net = nets::tensor_net_bound(n_qubits, row.m, row.delta, wctx);
  out.net_bound = net.round_to(ctx.mantissa_bits);

  Real balance = exp(log(Real(16L, wp) / Real(27L, wp)) * n_qubits / 8L);
  Real gamma = exp(numerics::log_gamma_k(d2, wctx));
  Real upsilon = balance * net / gamma;
  out.upsilon = upsilon.round_to(ctx.mantissa_bits);

  // vol Sigma <= upsilon^{d^2} vol B_HS, and 2/sqrt(d) vol S <= vol Sigma.
  Real log_sep = log(upsilon) * d2 + numerics::log_ball_volume(d2, wctx) +
                 log(Real(d, wp)) / 2L - const_ln2(wp);
  out.log_vol_sep_upper =
      LogReal::from_log(log_sep.round_to(ctx.mantissa_bits));

  Real log_ratio = log_sep - log_volume_state_set(d, wctx).log_abs();
  out.log_ratio_upper =
      LogReal::from_log(log_ratio.round_to(ctx.mantissa_bits));
  out.per_dim = exp(log_ratio / (d2 - 1)).round_to(ctx.mantissa_bits);
  return out;
}

AsymptoticConstants asymptotic_constants(PrecisionContext ctx) {
  ctx.validate();
  long wp = ctx.working_bits();
  Real pi = const_pi(wp);
  Real e = const_e(wp);
  AsymptoticConstants out;
  out.lower_limit =
      (exp(Real(0.75, wp)) / sqrt(pi * 2L)).round_to(ctx.mantissa_bits);
  out.upper_limit = (exp(Real(0.25, wp)) * sqrt(Real(2L, wp) / const_ln2(wp)))
                        .round_to(ctx.mantissa_bits);
  out.refined_lower = sqrt(e / (pi * 8L)).round_to(ctx.mantissa_bits);
  return out;
}

InradiusReport inradius_report(int n_qubits, PrecisionContext ctx) {
  ctx.validate();
  if (n_qubits < 1) throw std::domain_error("inradius_report: N must be >= 1");
  long wp = ctx.working_bits();
  long d = pow2_checked(n_qubits);
  InradiusReport out;
  out.n_qubits = n_qubits;
  out.sigma_lower =
      exp(-log(Real(6L, wp)) * n_qubits / 2L).round_to(ctx.mantissa_bits);
  out.state_set_inradius =
      exp(-(log(Real(d, wp)) + log(Real(d - 1, wp))) / 2L)
          .round_to(ctx.mantissa_bits);
  out.volumetric_upper_exponent =
      1.0 + qubit::alpha_qubit(ctx).to_double();
  out.sigma_lower_exponent = std::log(6.0) / std::log(4.0);
  out.literature_eta[0] = std::log(20.0) / std::log(4.0);
  out.literature_eta[1] = 1.5;
  out.literature_beta[0] = std::log(10.0) / std::log(4.0);
  out.literature_beta[1] = 1.0;
  return out;
}

namespace {

// log of the qudit chain value before dividing by gamma_{d^2}:
// -alpha_D log d - N log(1-delta) + (1/2) log(2 log #F),
// #F = 2 (c'/delta)^{N(2D-2)}.
double qudit_log_upsilon(double alpha_d, double log_d, int copies,
                         long local_dim, double c_prime, double delta,
                         double log_gamma_d2) {
  double log_card_per_factor =
      static_cast<double>(2 * local_dim - 2) * std::log(c_prime / delta);
  double log_f = std::log(2.0) + static_cast<double>(copies) * log_card_per_factor;
  return -alpha_d * log_d - static_cast<double>(copies) * std::log1p(-delta) +
         0.5 * std::log(2.0 * log_f) - log_gamma_d2;
}

}  // namespace

QuditBound qudit_bound(long local_dim, int copies,
                       std::optional<double> c_prime, PrecisionContext ctx,
                       std::optional<double> delta) {
  ctx.validate();
  if (local_dim < 2) throw std::domain_error("qudit_bound: D must be >= 2");
  if (copies < 2) throw std::domain_error("qudit_bound: N must be >= 2");
  long wp = ctx.working_bits();
  PrecisionContext wctx(wp);

  QuditBound out;
  out.local_dim = local_dim;
  out.copies = copies;
  out.c_prime_defaulted = !c_prime.has_value();
  out.c_prime = c_prime.value_or(kDefaultQuditNetConstant);
  if (out.c_prime <= 0.0)
    throw std::domain_error("qudit_bound: c_prime must be positive");

  long d = 1;
  for (int i = 0; i < copies; ++i) {
    if (d > 3037000499L / local_dim)
      throw std::domain_error("qudit_bound: D^N too large");
    d *= local_dim;
  }
  long d2 = checked_square(d);

  Real alpha_w = qubit::alpha_exponent(local_dim, wctx);
  out.alpha_d = alpha_w.round_to(ctx.mantissa_bits);
  double alpha_d = alpha_w.to_double();
  double log_d = std::log(static_cast<double>(d));
  Real log_gamma = numerics::log_gamma_k(d2, wctx);
  double log_gamma_d = log_gamma.to_double();

  double delta_hi = std::min(1.0 - 1e-9, out.c_prime * (1.0 - 1e-9));
  if (delta.has_value()) {
    if (!(*delta > 0.0 && *delta < 1.0))
      throw std::domain_error("qudit_bound: delta must be in (0, 1)");
    out.delta = *delta;
  } else {
    // Coarse log-spaced scan, then golden-section refinement.
    auto f = [&](double dl) {
      return qudit_log_upsilon(alpha_d, log_d, copies, local_dim, out.c_prime,
                               dl, log_gamma_d);
    };
    double best_x = 1e-6, best_v = f(best_x);
    for (int i = 1; i <= 200; ++i) {
      double x = std::exp(std::log(1e-6) +
                          (std::log(delta_hi) - std::log(1e-6)) * i / 200.0);
      double v = f(x);
      if (v < best_v) {
        best_v = v;
        best_x = x;
      }
    }
    double lo = best_x / 2.0, hi = std::min(delta_hi, best_x * 2.0);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - (hi - lo) * invphi, b = lo + (hi - lo) * invphi;
    double fa = f(a), fb = f(b);
    while (hi - lo > 1e-9) {
      if (fa < fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - (hi - lo) * invphi;
        fa = f(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + (hi - lo) * invphi;
        fb = f(b);
      }
    }
    out.delta = (lo + hi) / 2.0;
  }

  // Full-precision evaluation at the chosen delta.
  Real dl(out.delta, wp);
  Real log_card = const_ln2(wp) +
                  log(Real(out.c_prime, wp) / dl) *
                      (static_cast<long>(copies) * (2 * local_dim - 2));
  Real log_upsilon = -alpha_w * log(Real(d, wp)) -
                     log(Real(1L, wp) - dl) * copies +
                     log(log_card * 2L) / 2L - log_gamma;
  Real upsilon = exp(log_upsilon);
  out.upsilon = upsilon.round_to(ctx.mantissa_bits);

  Real log_sep = log_upsilon * d2 + numerics::log_ball_volume(d2, wctx) +
                 log(Real(d, wp)) / 2L - const_ln2(wp);
  Real log_ratio = log_sep - log_volume_state_set(d, wctx).log_abs();
  out.log_ratio_upper =
      LogReal::from_log(log_ratio.round_to(ctx.mantissa_bits));
  out.per_dim = exp(log_ratio / (d2 - 1)).round_to(ctx.mantissa_bits);
  return out;
}

// ---------------------------------------------------------------------------
// Report builders and serialization

namespace {

nlohmann::ordered_json input_to_json(const InputValue& v) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

nlohmann::ordered_json to_json_obj(const BoundReport& r) {
  r.check();
  nlohmann::ordered_json j;
  j["quantity"] = r.quantity;
  j["lower_log_e"] = r.lower.has_value() && !r.lower->is_zero()
                         ? nlohmann::ordered_json(r.lower->log_abs().to_double())
                         : nlohmann::ordered_json(nullptr);
  j["upper_log_e"] = r.upper.has_value() && !r.upper->is_zero()
                         ? nlohmann::ordered_json(r.upper->log_abs().to_double())
                         : nlohmann::ordered_json(nullptr);
  j["per_dim"] = r.per_dim;
  auto de = r.decimal_exponent();
  j["decimal_exponent"] =
      de.has_value() ? nlohmann::ordered_json(*de) : nlohmann::ordered_json(nullptr);
  j["equation_tags"] = r.equation_tags;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = input_to_json(v);
  j["inputs"] = inputs;
  j["precision_bits"] = r.precision_bits;
  return j;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

const char* const kReportCsvHeader =
    "quantity,lower_log_e,upper_log_e,per_dim,decimal_exponent,"
    "equation_tags,precision_bits";

std::string report_to_json(const BoundReport& report, int indent) {
  return to_json_obj(report).dump(indent);
}

std::string reports_to_json(const std::vector<BoundReport>& reports,
                            int indent) {
  nlohmann::ordered_json j;
  j["schema"] = "sepvol-report/1";
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json_obj(r));
  j["reports"] = arr;
  return j.dump(indent);
}

std::string report_to_csv_row(const BoundReport& report) {
  report.check();
  std::ostringstream out;
  out << report.quantity << ',';
  if (report.lower.has_value() && !report.lower->is_zero())
    out << fmt_double(report.lower->log_abs().to_double());
  out << ',';
  if (report.upper.has_value() && !report.upper->is_zero())
    out << fmt_double(report.upper->log_abs().to_double());
  out << ',' << fmt_double(report.per_dim) << ',';
  auto de = report.decimal_exponent();
  if (de.has_value()) out << *de;
  out << ',';
  for (std::size_t i = 0; i < report.equation_tags.size(); ++i) {
    if (i) out << ';';
    out << report.equation_tags[i];
  }
  out << ',' << report.precision_bits;
  return out.str();
}

std::string report_to_text(const BoundReport& report) {
  report.check();
  std::ostringstream out;
  out << report.quantity << '\n';
  auto line = [&](const char* name, const std::optional<LogReal>& v) {
    if (!v.has_value()) return;
    out << "  " << name << ": " << v->to_decimal_string()
        << "  (log_e = " << fmt_double(v->is_zero() ? 0.0
                                                    : v->log_abs().to_double())
        << ")\n";
  };
  line("lower", report.lower);
  line("upper", report.upper);
  out << "  per_dim: " << fmt_double(report.per_dim) << '\n';
  out << "  inputs:";
  for (const auto& [k, v] : report.inputs) {
    out << ' ' << k << '=';
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>)
            out << fmt_double(x);
          else if constexpr (std::is_same_v<T, bool>)
            out << (x ? "true" : "false");
          else
            out << x;
        },
        v);
  }
  out << "\n  precision_bits: " << report.precision_bits << '\n';
  return out.str();
}

BoundReport ratio_bounds_report(const RatioBounds& rb, PrecisionContext ctx) {
  long d2m1 = checked_square(pow2_checked(rb.n_qubits)) - 1;
  BoundReport r;
  r.quantity = "separable_to_states_volume_ratio";
  r.lower = LogReal::from_real(rb.lower_refined).pow_int(d2m1);
  r.upper = LogReal::from_real(rb.upper).pow_int(d2m1);
  r.per_dim = rb.upper.to_double();
  r.equation_tags = {"vr"};
  r.inputs = {{"qubits", static_cast<long>(rb.n_qubits)},
              {"per_dim_upper", rb.upper.to_double()},
              {"per_dim_lower_basic", rb.lower_basic.to_double()},
              {"per_dim_lower_refined", rb.lower_refined.to_double()}};
  r.precision_bits = ctx.mantissa_bits;
  return r;
}

BoundReport trace_ball_report(long d, const TraceBallVr& vr,
                              PrecisionContext ctx) {
  BoundReport r;
  r.quantity = "trace_ball_volume_radius";
  r.lower = LogReal::from_real(vr.lower);
  r.upper = LogReal::from_real(vr.upper);
  r.per_dim = vr.upper.to_double();
  r.equation_tags = {"vrDelta", "urysohn"};
  r.inputs = {{"d", d}, {"urysohn_upper", vr.urysohn_upper.to_double()}};
  r.precision_bits = ctx.mantissa_bits;
  return r;
}

BoundReport separable_vr_report(int n_qubits, const SeparableVr& vr,
                                PrecisionContext ctx) {
  BoundReport r;
  r.quantity = "separable_sym_volume_radius";
  r.lower = LogReal::from_real(vr.lower);
  Real upper = vr.upper_net.has_value() && *vr.upper_net < vr.upper_closed
                   ? *vr.upper_net
                   : vr.upper_closed;
  r.upper = LogReal::from_real(upper);
  r.per_dim = upper.to_double();
  r.equation_tags = {"vrSigma", "vrSigmamod", "mstarfinal"};
  r.inputs = {{"qubits", static_cast<long>(n_qubits)},
              {"upper_closed", vr.upper_closed.to_double()},
              {"net_used", vr.upper_net.has_value()}};
  r.precision_bits = ctx.mantissa_bits;
  return r;
}

BoundReport pipeline_report(const SeparablePipeline& p, PrecisionContext ctx) {
  BoundReport r;
  r.quantity = "separable_to_states_volume_ratio_net";
  r.upper = p.log_ratio_upper;
  r.per_dim = p.per_dim.to_double();
  r.equation_tags = {"mstarpi", "2NlogN", "SSigma", "closed"};
  r.inputs = {{"qubits", static_cast<long>(p.n_qubits)},
              {"net_m", p.row.m},
              {"net_epsilon_degrees", p.row.epsilon_degrees},
              {"net_delta", p.row.delta},
              {"gaussian_max_bound", p.net_bound.to_double()},
              {"upsilon", p.upsilon.to_double()}};
  r.precision_bits = ctx.mantissa_bits;
  return r;
}

BoundReport state_set_volume_report(long d, PrecisionContext ctx) {
  BoundReport r;
  r.quantity = "state_set_volume";
  LogReal v = log_volume_state_set(d, ctx);
  r.lower = v;
  r.upper = v;
  r.per_dim = state_set_volume_radius(d, ctx).to_double();
  r.equation_tags = {"closed"};
  r.inputs = {{"d", d}};
  r.precision_bits = ctx.mantissa_bits;
  return r;
}

BoundReport inradius_to_report(const InradiusReport& rep,
                               PrecisionContext ctx) {
  BoundReport r;
  r.quantity = "separable_sym_inradius";
  r.lower = LogReal::from_real(rep.sigma_lower);
  r.upper = LogReal::from_real(rep.state_set_inradius);
  r.per_dim = rep.sigma_lower.to_double();
  r.equation_tags = {"vrSigma", "rs"};
  r.inputs = {{"qubits", static_cast<long>(rep.n_qubits)},
              {"volumetric_upper_exponent", rep.volumetric_upper_exponent},
              {"sigma_lower_exponent", rep.sigma_lower_exponent},
              {"literature_eta_1", rep.literature_eta[0]},
              {"literature_eta_2", rep.literature_eta[1]},
              {"literature_beta_1", rep.literature_beta[0]},
              {"literature_beta_2", rep.literature_beta[1]}};
  r.precision_bits = ctx.mantissa_bits;
  return r;
}

BoundReport qudit_to_report(const QuditBound& q, PrecisionContext ctx) {
  BoundReport r;
  r.quantity = "qudit_separable_to_states_ratio";
  r.upper = q.log_ratio_upper;
  r.per_dim = q.per_dim.to_double();
  r.equation_tags = {"mstarpi", "SSigma", "closed"};
  r.inputs = {{"local_dim", q.local_dim},
              {"copies", static_cast<long>(q.copies)},
              {"c_prime", q.c_prime},
              {"c_prime_defaulted", q.c_prime_defaulted},
              {"delta", q.delta},
              {"alpha_d", q.alpha_d.to_double()},
              {"upsilon", q.upsilon.to_double()}};
  r.precision_bits = ctx.mantissa_bits;
  return r;
}

}  // namespace sepvol::bounds

// sepvol: bound reports, net generation/certification, and verification
// suites for the separable-state volume library.
//
// Exit codes: 0 success, 1 verification failure, 2 bad flags, 3 numeric
// domain error.

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sepvol/bounds.hpp"
#include "sepvol/gue.hpp"
#include "sepvol/nets.hpp"
#include "sepvol/numerics.hpp"
#include "sepvol/verify.hpp"

namespace {

using namespace sepvol;

struct GlobalOpts {
  long precision_bits = 256;
  std::uint64_t seed = 20030617;
  std::int64_t samples = 100000;
  std::string format = "text";
};

PrecisionContext make_ctx(const GlobalOpts& g) {
  PrecisionContext ctx(g.precision_bits);
  ctx.validate();
  return ctx;
}

void emit(const std::vector<bounds::BoundReport>& reports,
          const GlobalOpts& g) {
  if (g.format == "json") {
    std::cout << bounds::reports_to_json(reports, 2) << '\n';
  } else if (g.format == "csv") {
    std::cout << bounds::kReportCsvHeader << '\n';
    for (const auto& r : reports)
      std::cout << bounds::report_to_csv_row(r) << '\n';
  } else {
    for (const auto& r : reports) std::cout << bounds::report_to_text(r);
  }
}

// Largest usable row of a covering table (or the bundled one).
nets::NetTableRow pick_row(const std::string& net_path) {
  std::vector<nets::NetTableRow> rows = net_path.empty()
                                            ? nets::bundled_net_table()
                                            : nets::load_net_table(net_path);
  std::optional<nets::NetTableRow> best;
  for (const auto& r : rows)
    if (r.usable()) best = r;  // rows are sorted by m
  if (!best.has_value())
    throw std::domain_error("no usable net row (delta must be in (0, sqrt 2))");
  return *best;
}

int run_bounds(const GlobalOpts& g, int qubits, const std::string& net_path) {
  auto ctx = make_ctx(g);
  std::vector<bounds::BoundReport> reports;
  auto rb = bounds::ratio_bounds(qubits, ctx);
  reports.push_back(bounds::ratio_bounds_report(rb, ctx));

  auto row = pick_row(net_path);
  auto vr = bounds::vr_separable_bounds(qubits, row, ctx);
  reports.push_back(bounds::separable_vr_report(qubits, vr, ctx));

  auto pipe = bounds::separable_ratio_pipeline(qubits, row, ctx);
  reports.push_back(bounds::pipeline_report(pipe, ctx));

  emit(reports, g);
  return 0;
}

int run_verify(const GlobalOpts& g, const std::string& suite) {
  verify::SuiteOptions opt;
  opt.seed = g.seed;
  opt.samples = g.samples;
  opt.precision_bits = g.precision_bits;
  auto results = verify::run_suite(suite, opt);
  for (const auto& r : results)
    std::printf("%s %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.empty() ? "" : ": ", r.detail.c_str());
  bool ok = verify::all_passed(results);
  std::printf("%s: %zu checks\n", ok ? "OK" : "FAILED", results.size());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volume bounds for separable quantum states"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  if (const char* env = std::getenv("SEPVOL_PRECISION_BITS"))
    g.precision_bits = std::atol(env);
  app.add_option("--precision-bits", g.precision_bits,
                 "mantissa bits for high-precision arithmetic (>= 64)");
  app.add_option("--seed", g.seed, "Monte Carlo seed");
  app.add_option("--samples", g.samples, "Monte Carlo sample count");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  // bounds --qubits N [--net table.csv]
  auto* cmd_bounds = app.add_subcommand(
      "bounds", "two-sided volume-ratio bounds for N qubits");
  int qubits = 8;
  std::string net_path;
  cmd_bounds->add_option("--qubits", qubits, "number of qubits")
      ->required()
      ->check(CLI::Range(2, 31));
  cmd_bounds->add_option("--net", net_path, "covering table CSV");

  // vol-d --dim d
  auto* cmd_vold = app.add_subcommand(
      "vol-d", "closed-form volume of the state set on C^d");
  long vold_dim = 2;
  cmd_vold->add_option("--dim", vold_dim, "Hilbert space dimension")
      ->required()
      ->check(CLI::Range(2L, 100000L));

  // inradius --qubits N
  auto* cmd_inradius =
      app.add_subcommand("inradius", "in-radius bracket for N qubits");
  int inr_qubits = 2;
  cmd_inradius->add_option("--qubits", inr_qubits, "number of qubits")
      ->required()
      ->check(CLI::Range(1, 31));

  // qudit --qudit D --copies N [--c-prime c] [--delta d]
  auto* cmd_qudit =
      app.add_subcommand("qudit", "net-based bound for N qudits");
  long qudit_dim = 3;
  int qudit_copies = 2;
  double c_prime = -1.0;
  double qudit_delta = -1.0;
  cmd_qudit->add_option("--qudit", qudit_dim, "local dimension D")
      ->required()
      ->check(CLI::Range(2L, 1000000L));
  cmd_qudit->add_option("--copies", qudit_copies, "number of factors N")
      ->required()
      ->check(CLI::Range(2, 64));
  cmd_qudit->add_option("--c-prime", c_prime,
                        "net constant C' (defaults to a flagged placeholder)");
  cmd_qudit->add_option("--delta", qudit_delta,
                        "per-factor net radius in (0,1); optimized if absent");

  // constants
  auto* cmd_constants =
      app.add_subcommand("constants", "asymptotic numerical constants");

  // gue norm-bound --dim d | gue mean-width --dim d
  auto* cmd_gue = app.add_subcommand("gue", "Gaussian ensemble bounds");
  cmd_gue->require_subcommand(1);
  auto* cmd_norm =
      cmd_gue->add_subcommand("norm-bound", "expected operator norm bounds");
  long gue_dim = 16;
  cmd_norm->add_option("--dim", gue_dim, "matrix dimension")
      ->required()
      ->check(CLI::Range(1L, 100000L));
  auto* cmd_width = cmd_gue->add_subcommand(
      "mean-width", "mean half-width of the trace-norm ball");
  long width_dim = 2;
  cmd_width->add_option("--dim", width_dim, "matrix dimension")
      ->required()
      ->check(CLI::Range(2L, 64L));

  // nets generate|certify
  auto* cmd_nets = app.add_subcommand("nets", "spherical covering tools");
  cmd_nets->require_subcommand(1);
  auto* cmd_generate = cmd_nets->add_subcommand("generate", "build a net");
  double target_delta = 0.2;
  std::string method = "icosahedral_subdivision";
  std::string out_path = "net.csv";
  cmd_generate->add_option("--target-delta", target_delta, "covering radius")
      ->required();
  cmd_generate->add_option("--method", method, "construction method")
      ->check(CLI::IsMember({"icosahedral_subdivision", "fibonacci"}));
  cmd_generate->add_option("--out", out_path, "output CSV path");
  auto* cmd_certify =
      cmd_nets->add_subcommand("certify", "certify a covering radius");
  std::string points_path;
  double certify_delta = 0.0;
  cmd_certify->add_option("--file", points_path, "net point CSV")->required();
  cmd_certify->add_option("--delta", certify_delta, "radius to certify")
      ->required();

  // verify --suite name
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "desk";
  cmd_verify->add_option("--suite", suite, "desk, golden, or mc")
      ->check(CLI::IsMember({"desk", "golden", "mc"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    auto ctx = make_ctx(g);
    if (cmd_bounds->parsed()) return run_bounds(g, qubits, net_path);
    if (cmd_vold->parsed()) {
      emit({bounds::state_set_volume_report(vold_dim, ctx)}, g);
      return 0;
    }
    if (cmd_inradius->parsed()) {
      auto rep = bounds::inradius_report(inr_qubits, ctx);
      emit({bounds::inradius_to_report(rep, ctx)}, g);
      return 0;
    }
    if (cmd_qudit->parsed()) {
      auto q = bounds::qudit_bound(
          qudit_dim, qudit_copies,
          c_prime > 0 ? std::optional<double>(c_prime) : std::nullopt, ctx,
          qudit_delta > 0 ? std::optional<double>(qudit_delta) : std::nullopt);
      if (q.c_prime_defaulted)
        std::cerr << "warning: net constant C' defaulted to "
                  << bounds::kDefaultQuditNetConstant
                  << "; pass --c-prime to control it\n";
      emit({bounds::qudit_to_report(q, ctx)}, g);
      return 0;
    }
    if (cmd_constants->parsed()) {
      auto c = bounds::asymptotic_constants(ctx);
      std::printf("lower_limit %.12f\nupper_limit %.12f\nrefined_lower %.12f\n",
                  c.lower_limit.to_double(), c.upper_limit.to_double(),
                  c.refined_lower.to_double());
      return 0;
    }
    if (cmd_norm->parsed()) {
      auto vr = bounds::vr_trace_ball_bounds(gue_dim, ctx);
      auto analytic = gue::norm_bound_analytic(gue_dim, ctx);
      double discrete = gue::norm_bound_discrete(gue_dim, ctx).to_double();
      auto report = bounds::trace_ball_report(gue_dim, vr, ctx);
      report.inputs.emplace_back("norm_bound", discrete);
      report.inputs.emplace_back(
          "norm_bound_normalized",
          discrete / std::sqrt(static_cast<double>(gue_dim)));
      report.inputs.emplace_back("analytic_bound", analytic.bound.to_double());
      report.inputs.emplace_back("t_star", analytic.t_star.to_double());
      emit({report}, g);
      return 0;
    }
    if (cmd_width->parsed()) {
      auto r = gue::mean_width_trace_ball(width_dim, g.samples, g.seed, ctx);
      bounds::BoundReport report;
      report.quantity = "trace_ball_mean_halfwidth";
      report.upper = LogReal::from_real(r.bound);
      report.per_dim = r.bound.to_double();
      report.equation_tags = {"urysohn"};
      report.inputs = {
          {"d", width_dim},
          {"mc_mean", r.mc.mean},
          {"mc_stderr", r.mc.stderr_},
          {"samples", static_cast<long>(r.mc.samples)},
          {"seed", static_cast<long>(r.mc.seed)}};
      report.precision_bits = ctx.mantissa_bits;
      emit({report}, g);
      return 0;
    }
    if (cmd_generate->parsed()) {
      auto net = nets::generate_net(target_delta,
                                    method == "fibonacci"
                                        ? nets::NetMethod::fibonacci
                                        : nets::NetMethod::icosahedral_subdivision);
      nets::save_net_points(net, out_path);
      std::printf("{\"points\": %zu, \"delta\": %.9f, \"certified\": %s}\n",
                  net.points.size(), net.delta,
                  net.certified ? "true" : "false");
      return 0;
    }
    if (cmd_certify->parsed()) {
      auto net = nets::load_net_points(points_path);
      auto res = nets::certify_covering(net.points, certify_delta);
      std::printf("{\"certified\": %s, \"worst_gap\": %.9f, \"delta\": %.9f}\n",
                  res.certified ? "true" : "false", res.worst_gap,
                  certify_delta);
      return res.certified ? 0 : 1;
    }
    if (cmd_verify->parsed()) return run_verify(g, suite);
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

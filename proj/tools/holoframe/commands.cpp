#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

#include "holoframe/expression.hpp"
#include "holoframe/fixtures.hpp"
#include "holoframe/form_ops.hpp"
#include "holoframe/gform_io.hpp"
#include "holoframe/parallel.hpp"
#include "holoframe/polynomial.hpp"
#include "holoframe/weak_residual.hpp"

namespace holoframe::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultSpacing = 1.0 / 32.0;

AlgebraPtr resolve_algebra(const RunConfig& c) {
  if (!c.algebra_file.empty()) return std::make_shared<const LieAlgebra>(LieAlgebra::load(c.algebra_file));
  if (!c.fixture.empty()) {
    const ManufacturedCase& fx = find_fixture(c.fixture);
    if (!c.algebra_name.empty() && c.algebra_name != fx.algebra)
      throw ParseError("fixture '" + fx.name + "' is defined over " + fx.algebra + ", not " + c.algebra_name);
    return std::make_shared<const LieAlgebra>(LieAlgebra::builtin(fx.algebra));
  }
  return std::make_shared<const LieAlgebra>(LieAlgebra::builtin(c.algebra_name));
}

/// An input form together with a way to sample it again on a finer grid.
struct Input {
  AlgebraPtr algebra;
  GForm form;
  std::function<GForm(double)> resample;
};

DomainPtr make_domain(int n, double radius, double spacing, double fraction) {
  try {
    return std::make_shared<const GridDomain>(n, radius, spacing, fraction);
  } catch (const Error& e) {
    throw ParseError(std::string("domain: ") + e.what());
  }
}

Input load_input(const RunConfig& c) {
  const AlgebraPtr g = resolve_algebra(c);
  if (!c.fixture.empty()) {
    const ManufacturedCase& fx = find_fixture(c.fixture);
    if (c.n && *c.n != fx.n)
      throw ParseError("fixture '" + fx.name + "' lives on C^" + std::to_string(fx.n));
    const double radius = c.radius.value_or(fx.radius);
    auto sample = [=](double h) {
      return manufactured_lambda(fx, make_domain(fx.n, radius, h, c.subdomain_fraction)).lambda;
    };
    return {g, sample(c.spacing.value_or(kDefaultSpacing)), sample};
  }
  if (!c.expression.empty()) {
    const int n = c.n.value_or(1);
    const double radius = c.radius.value_or(1.0);
    const PolynomialForm p = c.input_degree == 2
                                 ? PolynomialForm{2, {parse_algebra_polynomial(c.expression, *g, n)}}
                                 : parse_form(c.expression, *g, n, c.input_degree);
    if (c.input_degree == 2 && n != 2) throw ParseError("(0,2)-forms need n = 2");
    auto sample = [=](double h) {
      return sample_polynomial_form(make_domain(n, radius, h, c.subdomain_fraction), g, p);
    };
    return {g, sample(c.spacing.value_or(kDefaultSpacing)), sample};
  }
  const bool csv = c.input_file.extension() == ".csv";
  GForm f = csv ? read_gform_csv(c.input_file, g) : read_gform_binary(c.input_file, g);
  const GridDomain& d = f.domain();
  auto differs = [](const std::optional<double>& want, double have) {
    return want && std::abs(*want - have) > 1e-12 * std::max(1.0, std::abs(have));
  };
  if ((c.n && *c.n != d.n()) || differs(c.radius, d.radius()) || differs(c.spacing, d.spacing()))
    throw ParseError("[domain] does not match the grid stored in " + c.input_file.string());
  return {g, std::move(f), {}};
}

json describe(const GForm& f) {
  const GridDomain& d = f.domain();
  return {{"algebra", f.algebra().id()}, {"n", d.n()},          {"radius", d.radius()},
          {"spacing", d.spacing()},      {"nodes", d.size()},   {"degree", f.degree()}};
}

void ensure_output_dir(const RunConfig& c) {
  std::error_code ec;
  std::filesystem::create_directories(c.output_dir, ec);
  if (ec) throw Error("cannot create output directory " + c.output_dir.string() + ": " + ec.message());
}

void write_json(const RunConfig& c, const std::string& name, const json& j) {
  std::ofstream os(c.output_dir / name);
  if (!os) throw Error("cannot write " + (c.output_dir / name).string());
  os << j.dump(2) << '\n';
}

json report_header(const RunConfig& c) {
  return {{"command", to_string(c.command)}, {"config", c.to_json()}};
}

void require_degree(const GForm& f, int q, const char* command) {
  if (f.degree() != q)
    throw ParseError(std::string(command) + " needs a (0," + std::to_string(q) + ")-form input");
}

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig cfg = c.newton;
  cfg.kappa = HolderSpec::from_kappa(c.kappa);
  cfg.seed = c.seed;
  return cfg;
}

/// lambda rescaled to the domain the solution of rescaled_solve lives on.
GForm lambda_on_solution_grid(const GForm& alpha, const SolveResult& r) {
  if (r.epsilon_used >= 1.0) return alpha;
  const GForm a = rescale(alpha, r.epsilon_used);
  GForm out(r.u.domain_ptr(), alpha.algebra_ptr(), 1);
  std::copy(a.data().begin(), a.data().end(), out.data().begin());
  return out;
}

SolveResult solve_form(const RunConfig& c, const GForm& alpha) {
  return rescaled_solve(
      alpha, [&c](const GridDomain& d) { return c.solver_for(d.n()); }, solver_config(c));
}

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
    case SolveStatus::rescaled_converged:
      return kExitOk;
    case SolveStatus::failed_nonintegrable:
      return kExitNonintegrable;
    case SolveStatus::failed_budget:
      return kExitBudget;
  }
  return kExitBudget;
}

}  // namespace

int cmd_check(const RunConfig& c) {
  const Input in = load_input(c);
  require_degree(in.form, 1, "check");
  const GForm& alpha = in.form;
  const double strong =
      alpha.domain().n() == 2 ? obstruction(alpha).sup_norm(alpha.domain().double_interior_mask()) : 0.0;
  const double weak = weak_obstruction_residual(alpha);
  const double gate = integrability_gate(alpha);
  const bool integrable = weak <= gate;

  json report = report_header(c);
  report["input"] = describe(alpha);
  report["strong_obstruction_sup"] = strong;
  report["weak_residual"] = weak;
  report["gate"] = gate;
  report["verdict"] = integrable ? "integrable" : "non_integrable";
  ensure_output_dir(c);
  write_json(c, "report.json", report);
  write_gform_binary(alpha, c.output_dir / "input.bin");
  std::printf("verdict %s  strong %.6e  weak %.6e  gate %.6e\n", integrable ? "integrable" : "non_integrable",
              strong, weak, gate);
  return kExitOk;
}

int cmd_solve(const RunConfig& c) {
  const Input in = load_input(c);
  require_degree(in.form, 1, "solve");
  const SolveResult r = solve_form(c, in.form);

  json report = report_header(c);
  report["input"] = describe(in.form);
  report["result"] = r.to_json();
  if (r.ok()) {
    const FrameReport f = frame_and_verify(r.u, lambda_on_solution_grid(in.form, r), solver_config(c).series());
    report["frame"] = f.to_json();
  }
  ensure_output_dir(c);
  write_json(c, "report.json", report);
  write_gform_binary(in.form, c.output_dir / "input.bin");
  write_gform_binary(r.u, c.output_dir / "u.bin");
  write_gform_csv(r.u, c.output_dir / "u.csv");
  {
    std::ofstream os(c.output_dir / "residuals.csv");
    os << "iteration,residual\n";
    char buf[64];
    for (std::size_t i = 0; i < r.residual_history.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, r.residual_history[i]);
      os << buf;
    }
  }
  std::printf("status %s  epsilon %g  iterations %d  residual %.6e\n", to_string(r.status).c_str(),
              r.epsilon_used, r.iterations, r.residual_history.empty() ? 0.0 : r.residual_history.back());
  if (!r.message.empty()) std::printf("%s\n", r.message.c_str());
  return exit_code(r.status);
}

int cmd_verify(const RunConfig& c) {
  const AlgebraPtr g = resolve_algebra(c);
  std::vector<IdentityDefect> rows;
  rows.push_back({"jacobi", g->id(), g->jacobi_defect(), c.jacobi_tolerance});
  if (g->has_representation())
    rows.push_back({"representation", g->id(), g->representation_defect(), c.jacobi_tolerance});
  const bool algebra_ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass(); });

  std::optional<GForm> input;
  if (c.has_input()) {
    input = load_input(c).form;
    require_degree(*input, 1, "verify");
  }
  if (algebra_ok) {
    IdentitySuiteOptions opts = c.suite;
    opts.seed = c.seed;
    for (auto& r : run_identity_suite(*g, opts)) rows.push_back(std::move(r));
    if (input) {
      const HolderSpec spec = HolderSpec::from_kappa(c.kappa);
      for (double eps : c.margin_eps) {
        const double m = scaling_margin(*input, eps, spec, c.holder_options());
        char name[64];
        std::snprintf(name, sizeof name, "scaling_margin(eps=%g)", eps);
        rows.push_back({name, g->id(), std::max(0.0, -m), c.margin_tolerance});
      }
    }
  }
  const bool pass = algebra_ok && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass(); });

  json report = report_header(c);
  report["identities"] = to_json(rows);
  report["pass"] = pass;
  if (!algebra_ok) report["message"] = "algebra failed validation; identity suite not run";
  if (input) report["input"] = describe(*input);
  ensure_output_dir(c);
  write_json(c, "identities.json", to_json(rows));
  write_json(c, "report.json", report);
  std::fputs(format_table(rows).c_str(), stdout);
  if (!algebra_ok) std::printf("algebra failed validation; identity suite not run\n");
  return pass ? kExitOk : kExitIdentityFail;
}

int cmd_norms(const RunConfig& c) {
  const Input in = load_input(c);
  const HolderSpec spec = HolderSpec::from_kappa(c.kappa);
  const HolderReport h = holder_norm(in.form, spec, c.holder_options());

  json report = report_header(c);
  report["input"] = describe(in.form);
  report["holder"] = h.to_json();
  std::printf("holder norm %.10g  (kappa %g, %llu pairs%s)\n", h.value, h.kappa,
              static_cast<unsigned long long>(h.pair_count), h.exhaustive ? ", exhaustive" : "");

  if (!c.refinements.empty()) {
    if (!in.resample) throw ParseError("[norms] refinements need a fixture or expression input");
    require_degree(in.form, 1, "norms with refinements");
    json table = json::array();
    std::printf("%-12s %-20s %-14s %-14s %-14s\n", "spacing", "status", "K_norm", "V_norm", "ratio");
    for (double spacing : c.refinements) {
      const GForm lambda = in.resample(spacing);
      const SolveResult r = solve_form(c, lambda);
      json row{{"spacing", spacing}, {"status", to_string(r.status)}, {"epsilon_used", r.epsilon_used}};
      if (r.ok()) {
        const InteriorEstimate e =
            interior_estimate_report(r.u, lambda_on_solution_grid(lambda, r), spec, c.holder_options());
        row["estimate"] = e.to_json();
        std::printf("%-12g %-20s %-14.6e %-14.6e %-14.6e\n", spacing, to_string(r.status).c_str(), e.K_norm,
                    e.V_norm, e.ratio);
      } else {
        std::printf("%-12g %-20s\n", spacing, to_string(r.status).c_str());
      }
      table.push_back(row);
    }
    report["interior_estimates"] = table;
  }
  ensure_output_dir(c);
  write_json(c, "report.json", report);
  return kExitOk;
}

int run_command(const RunConfig& c) {
  c.validate();
  set_thread_count(c.threads);
  switch (c.command) {
    case Command::check:
      return cmd_check(c);
    case Command::solve:
      return cmd_solve(c);
    case Command::verify:
      return cmd_verify(c);
    case Command::norms:
      return cmd_norms(c);
  }
  return kExitMalformed;
}

}  // namespace holoframe::cli

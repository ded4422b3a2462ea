// Acceptance driver: one PASS/FAIL line per criterion.
//
//   holoframe_acceptance            run criteria 1-10
//   holoframe_acceptance -c 3 -c 7  run a subset

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holoframe/canonical_solver.hpp"
#include "holoframe/fixtures.hpp"
#include "holoframe/form_ops.hpp"
#include "holoframe/frame_solver.hpp"
#include "holoframe/holder.hpp"
#include "holoframe/identity_suite.hpp"
#include "holoframe/oracle.hpp"
#include "holoframe/weak_residual.hpp"

using namespace holoframe;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok) { pass = pass && ok; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void identity_suite(Outcome& out) {
  IdentitySuiteOptions opts;
  opts.spacing = 1.0 / 32.0;
  double timed = 0.0;
  for (const char* name : {"heisenberg3", "sl2C", "abelian(2)"}) {
    const LieAlgebra g = LieAlgebra::builtin(name);
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = run_identity_suite(g, opts);
    const double secs = seconds_since(t0);
    double worst = 0.0;
    for (const auto& r : rows) {
      out.require(r.pass());
      worst = std::max(worst, r.defect);
    }
    const bool abelian = g.nonzero_constants().empty();
    if (!abelian) timed += secs;
    out.detail << name << " max " << sci(worst) << " (" << std::fixed << std::setprecision(1) << secs
               << "s)" << std::defaultfloat << "; ";
  }
  out.require(timed <= 60.0);
  out.detail << "heisenberg3+sl2C runtime " << std::fixed << std::setprecision(1) << timed << "s <= 60s";
}

void cochain(Outcome& out) {
  double worst = 0.0;
  std::uint64_t seed = 7;
  for (const char* name : {"heisenberg3", "sl2C"}) {
    const double d = dbar_dbar_defect(LieAlgebra::builtin(name), 1.0, 1.0 / 16.0, 25, seed++);
    worst = std::max(worst, d);
  }
  out.require(worst <= 1e-13);
  out.detail << "50 inputs, max |dbar dbar u| " << sci(worst) << " <= 1e-13";
}

void closed_loop(Outcome& out) {
  SolverConfig cfg;
  for (const char* name : {"abelian_1d", "heisenberg_step2_1d", "heisenberg_step2_2d"}) {
    const auto sc = manufactured_lambda(find_fixture(name), 1.0 / 64.0);
    const auto S = CanonicalSolver::for_dimension(sc.domain->n());
    const auto r = newton_frame_solve(sc.lambda, S, cfg);
    const double res = r.residual_history.empty() ? 0.0 : r.residual_history.back();
    const auto rep = frame_and_verify(r.u, sc.lambda, cfg.series());
    out.require(r.status == SolveStatus::converged && res <= 1e-8 && r.iterations <= 12 &&
                rep.gauge_check <= 1e-3);
    out.detail << name << " " << to_string(r.status) << " res " << sci(res) << " its " << r.iterations
               << " gauge " << sci(rep.gauge_check) << "; ";
  }
}

void obstruction_gate(Outcome& out) {
  const auto& fx = find_fixture("nonintegrable_2d");
  SolverConfig cfg;
  const SolverFactory factory = [](const GridDomain& d) { return CanonicalSolver::for_dimension(d.n()); };
  for (const int inv : {16, 32, 64}) {
    const auto sc = manufactured_lambda(fx, 1.0 / inv);
    const auto r = rescaled_solve(sc.lambda, factory, cfg);
    const double factor = r.weak_residual / r.gate;
    out.require(r.status == SolveStatus::failed_nonintegrable && factor >= 10.0);
    out.detail << "h=1/" << inv << " " << to_string(r.status) << " weak/gate " << std::fixed
               << std::setprecision(1) << factor << std::defaultfloat << "; ";
  }
}

void kmap_range(Outcome& out) {
  for (const int inv : {16, 32, 64}) {
    const double h = 1.0 / inv;
    for (const char* name : {"heisenberg_step2_2d", "abelian_2d", "nonintegrable_2d"}) {
      const auto& fx = find_fixture(name);
      const auto sc = manufactured_lambda(fx, h);
      const auto S = CanonicalSolver::for_dimension(2);
      const GForm k = kmap(S, sc.lambda);
      const double v = dbar(k).sup_norm(sc.domain->interior_mask());
      const double bound = 5.0 * (h * h + S.cg_tolerance);
      out.require(fx.integrable ? v <= bound : v > 0.1);
      out.detail << name << "@1/" << inv << " " << sci(v) << (fx.integrable ? " <= " + sci(bound) : " > 0.1")
                 << "; ";
    }
  }
}

void scaling(Outcome& out) {
  const auto algebra = std::make_shared<const LieAlgebra>(LieAlgebra::heisenberg3());
  const auto domain = std::make_shared<const GridDomain>(1, 1.0, 1.0 / 64.0);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  double worst = 1e300;
  std::string where;
  for (int trial = 0; trial < 20; ++trial) {
    const double kappa = (trial % 2 == 0 ? 0.0 : 1.0) + unit(rng);
    const auto spec = HolderSpec::from_kappa(kappa);
    const PolynomialForm pf = random_polynomial_form(*algebra, 1, 1, 3, 4, 1.0, rng);
    const GForm alpha = sample_polynomial_form(domain, algebra, pf);
    HolderOptions ho;
    ho.seed = static_cast<std::uint64_t>(trial);
    for (const double eps : {0.1, 0.25, 0.5, 0.75}) {
      const double m = scaling_margin(alpha, eps, spec, ho);
      if (m < worst) {
        worst = m;
        std::ostringstream w;
        w << "kappa " << kappa << " eps " << eps;
        where = w.str();
      }
    }
  }
  out.require(worst >= -0.02);
  out.detail << "80 margins, min " << sci(worst) << " (" << where << ") >= -0.02";
}

void ratio_limit(Outcome& out) {
  SolverConfig cfg;
  const std::vector<double> ts{1.0, 0.5, 0.25, 0.125};
  {
    const auto sc = manufactured_lambda(find_fixture("heisenberg_step2_1d"), 1.0 / 64.0);
    const auto pts = ratio_study(sc.lambda, CanonicalSolver::for_dimension(1), cfg, ts);
    out.detail << "heisenberg_step2_1d";
    for (const auto& p : pts) out.detail << " t=" << p.t << ":" << p.ratio;
    const auto& last = pts.back();
    out.require(last.status == SolveStatus::converged && std::abs(last.ratio - 1.0) <= 0.1);
    out.detail << "; ";
  }
  const auto sc = manufactured_lambda(find_fixture("abelian_1d"), 1.0 / 64.0);
  const auto pts = ratio_study(sc.lambda, CanonicalSolver::for_dimension(1), cfg, ts);
  double dev = 0.0;
  for (const auto& p : pts) dev = std::max(dev, std::abs(p.ratio - 1.0));
  out.require(dev <= 1e-10);
  out.detail << "abelian_1d max |ratio-1| " << sci(dev);
}

void holder_oracle(Outcome& out) {
  const auto algebra = std::make_shared<const LieAlgebra>(LieAlgebra::abelian(1));
  const auto domain = std::make_shared<const GridDomain>(1, 1.0, 1.0 / 64.0);
  const GForm f = GForm::sample(domain, algebra, 0, [&](std::size_t p, int) {
    AlgebraElement v(1);
    v[0] = std::conj(domain->z(p, 0));
    return v;
  });
  HolderOptions ho;
  ho.force_exhaustive = true;
  const auto rep = holder_norm(f, HolderSpec::from_kappa(0.5), ho);
  const double rel = std::abs(rep.value - std::sqrt(2.0)) / std::sqrt(2.0);
  out.require(rep.exhaustive && rel <= 0.02);
  out.detail << "value " << rep.value << " vs sqrt2, rel err " << sci(rel) << ", " << rep.pair_count << " pairs";
}

void dexp_validation(Outcome& out) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const char* name : {"sl2C", "heisenberg3"}) {
    const LieAlgebra g = LieAlgebra::builtin(name);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      AlgebraElement u(g.dim());
      AlgebraElement v(g.dim());
      for (int k = 0; k < g.dim(); ++k) {
        u[k] = cplx(gauss(rng), gauss(rng));
        v[k] = cplx(gauss(rng), gauss(rng));
      }
      u *= std::uniform_real_distribution<double>(0.0, 1.0)(rng) / u.norm();
      const AlgebraElement exact = g.dexp_factor(u) * v;
      worst = std::max(worst, (fd_dexp_oracle(g, u, v) - exact).norm());
    }
    out.require(worst <= 1e-6);
    out.detail << name << " fd max " << sci(worst) << "; ";
  }
  for (const auto& [name, inv] : std::vector<std::pair<std::string, int>>{
           {"heisenberg_step2_1d", 64}, {"heisenberg_step2_2d", 32}}) {
    const double h = 1.0 / inv;
    const auto sc = manufactured_lambda(find_fixture(name), h);
    const MatrixField sigma = exp_rep_field(*sc.u);
    const MatrixField lhs = matrix_mc(sigma);
    const MatrixField rhs = represent(mc_pullback(*sc.u));
    const double dev = MatrixField::max_deviation(lhs, rhs, sc.domain->interior_mask());
    out.require(dev <= 5.0 * h * h);
    out.detail << name << "@1/" << inv << " matrix_mc dev " << sci(dev) << " <= " << sci(5.0 * h * h) << "; ";
  }
  // Frames of random polynomials in z and zbar, where the difference
  // quotients are not exact.
  const auto algebra = std::make_shared<const LieAlgebra>(LieAlgebra::sl2C());
  const double h = 1.0 / 64.0;
  const auto domain = std::make_shared<const GridDomain>(1, 1.0, h);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const PolynomialForm pf = random_polynomial_form(*algebra, 1, 0, 3, 6, 0.5, rng);
    const GForm u = sample_polynomial_form(domain, algebra, pf);
    const double dev = MatrixField::max_deviation(matrix_mc(exp_rep_field(u)), represent(mc_pullback(u)),
                                                  domain->interior_mask());
    worst = std::max(worst, dev);
  }
  out.require(worst <= 5.0 * h * h);
  out.detail << "sl2C random frames@1/64 dev " << sci(worst) << " <= " << sci(5.0 * h * h);
}

void interior_estimate(Outcome& out) {
  SolverConfig cfg;
  for (const char* name : {"abelian_1d", "heisenberg_step2_1d"}) {
    std::vector<double> ratios;
    for (const int inv : {16, 32, 64}) {
      const auto sc = manufactured_lambda(find_fixture(name), 1.0 / inv);
      const auto r = newton_frame_solve(sc.lambda, CanonicalSolver::for_dimension(1), cfg);
      const auto est = interior_estimate_report(r.u, sc.lambda, cfg.kappa);
      ratios.push_back(est.ratio);
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    const double spread = (*hi - *lo) / *lo;
    out.require(spread <= 0.25);
    out.detail << name << " ratios";
    for (double r : ratios) out.detail << " " << r;
    out.detail << " spread " << std::fixed << std::setprecision(3) << spread << std::defaultfloat << "; ";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holoframe acceptance criteria"};
  std::vector<int> only;
  app.add_option("-c,--criterion", only, "criterion number (repeatable)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {1, {"identity suite", identity_suite}},
      {2, {"dbar dbar = 0", cochain}},
      {3, {"manufactured closed loop", closed_loop}},
      {4, {"obstruction gate", obstruction_gate}},
      {5, {"K-map range", kmap_range}},
      {6, {"scaling estimate", scaling}},
      {7, {"ratio limit", ratio_limit}},
      {8, {"Hoelder norm oracle", holder_oracle}},
      {9, {"dexp validation", dexp_validation}},
      {10, {"interior estimate", interior_estimate}},
  };
  if (only.empty())
    for (const auto& [k, v] : criteria) only.push_back(k);

  bool all = true;
  for (const int k : only) {
    const auto& [title, run] = criteria.at(k);
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    all = all && out.pass;
    std::printf("criterion %2d %s  %-26s %6.1fs  %s\n", k, out.pass ? "PASS" : "FAIL", title.c_str(),
                seconds_since(t0), out.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

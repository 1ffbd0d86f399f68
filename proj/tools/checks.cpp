#include "checks.hpp"

#include "spbvp/analysis.hpp"
#include "spbvp/global.hpp"
#include "spbvp/mesh.hpp"
#include "spbvp/problem.hpp"
#include "spbvp/scheme.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace spbvp::cli {

namespace {

const std::vector<int> kTableExponents = {4, 6, 10, 12, 20, 30};
const std::vector<int> kTableNs = {32, 64, 128, 256, 512, 1024, 2048};

double pow2(int e) { return std::ldexp(1.0, e); }

// tanh(z/2) = (1 - e^{-z}) / (1 + e^{-z}).
double half_tanh(double z) { return -std::expm1(-z) / (1.0 + std::exp(-z)); }

}  // namespace

Sabotage parse_sabotage(const std::string& name) {
  if (name.empty() || name == "none") {
    return Sabotage::none;
  }
  if (name == "delta-d-naive") {
    return Sabotage::delta_d_naive;
  }
  throw InvalidArgument("unknown sabotage '" + name + "'");
}

SuiteResult check_mesh_invariants() {
  SuiteResult r{"mesh invariants", true, {}};
  std::ostringstream detail;
  int meshes = 0;
  for (int e : kTableExponents) {
    for (int n : kTableNs) {
      MeshParams params;
      params.n = n;
      params.epsilon = pow2(-e);
      const Mesh mesh = generate_mesh(params);
      const MeshDiagnostics d = mesh_diagnostics(mesh);
      ++meshes;
      std::ostringstream why;
      if (d.symmetry_defect != 0.0) {
        why << " symmetry defect " << d.symmetry_defect;
      }
      if (!d.strictly_increasing) {
        why << " nodes not strictly increasing";
      }
      if (!d.within_bounds()) {
        why << " max h " << d.max_h << " (bound " << d.h_bound << "), max jump " << d.max_h_jump << " (bound "
            << d.h_jump_bound << ")";
      }
      if (!d.graded) {
        why << " step sizes not graded";
      }
      if (!mesh.degenerate() && mesh.x(n / 4) != mesh.lambda()) {
        why << " x_{N/4} != lambda";
      }
      if (!why.str().empty()) {
        r.passed = false;
        detail << "eps=2^-" << e << " N=" << n << ':' << why.str() << "; ";
      }
    }
  }
  r.detail = r.passed ? std::to_string(meshes) + " meshes" : detail.str();
  return r;
}

SuiteResult check_coefficient_identities(Sabotage sabotage) {
  SuiteResult r{"coefficient identities", true, {}};
  std::ostringstream detail;
  for (double z : {1e-6, 1e-3, 1.0, 10.0, 300.0}) {
    IntervalCoefficients c = interval_coefficients(1.0, z);
    if (sabotage == Sabotage::delta_d_naive) {
      c.delta_d = c.d - c.a;
    }
    const double t = half_tanh(z);
    const double err_dd = std::abs(c.delta_d - t) / t;
    const double err_sum = std::abs(c.a_plus_d() - 1.0 / t) * t;
    if (!(err_dd <= 1e-13) || !(err_sum <= 1e-13)) {
      r.passed = false;
      detail << "beta*h=" << z << ": rel err (d-a) " << err_dd << ", (a+d) " << err_sum << "; ";
    }
  }
  const IntervalCoefficients big = interval_coefficients(1.0, 800.0);
  const GreenKernel kernel(800.0, 0.0, 1.0, 1.0);
  const BasisValues u = basis_eval(kernel, 0.5);
  const double g = green_integral(kernel, 0.5);
  if (!std::isfinite(big.a) || !std::isfinite(big.d) || !std::isfinite(big.delta_d) || !std::isfinite(u.u1) ||
      !std::isfinite(u.u2) || !std::isfinite(g)) {
    r.passed = false;
    detail << "non-finite values at beta*h=800; ";
  }
  r.detail = r.passed ? "beta*h in {1e-6, 1e-3, 1, 10, 300, 800}" : detail.str();
  return r;
}

SuiteResult check_stability(int trials, std::uint64_t seed) {
  SuiteResult r{"stability inequality", true, {}};
  std::ostringstream detail;
  double min_ratio = std::numeric_limits<double>::infinity();
  std::uint64_t s = seed;
  for (int e : {4, 20}) {
    for (int n : {32, 256}) {
      const Problem p = builtin_problem("paper-test", pow2(-e));
      MeshParams params;
      params.n = n;
      params.epsilon = p.epsilon();
      const StabilityReport rep = stability_experiment(p, generate_mesh(params), trials, s++);
      min_ratio = std::min(min_ratio, rep.min_ratio);
      if (rep.violations != 0) {
        r.passed = false;
        detail << "eps=2^-" << e << " N=" << n << ": " << rep.violations << " violations; ";
      }
    }
  }
  std::ostringstream ok;
  ok << trials << " pairs per case, min ratio " << min_ratio;
  r.detail = r.passed ? ok.str() : detail.str();
  return r;
}

SuiteResult check_fitted_exactness() {
  SuiteResult r{"fitted exactness", true, {}};
  std::ostringstream detail;
  double worst_nodal = 0.0;
  double worst_global = 0.0;
  for (int e : {4, 10, 20}) {
    for (int n : {32, 256}) {
      for (double right : {0.0, 1.0}) {
        const Problem p = linear_gamma_problem(pow2(-e), 1.0, 0.0, right);
        MeshParams params;
        params.n = n;
        params.epsilon = p.epsilon();
        const auto sol = newton_solve(p, generate_mesh(params));
        const double nodal = nodal_error(sol, p);
        const auto g = build_global(sol, p, GlobalMode::plain);
        const double global = region_errors(g, p, 32).global_max;
        worst_nodal = std::max(worst_nodal, nodal);
        worst_global = std::max(worst_global, global);
        if (!sol.converged || !(nodal <= 1e-12) || !(global <= 1e-10)) {
          r.passed = false;
          detail << "eps=2^-" << e << " N=" << n << " y(1)=" << right << ": nodal " << nodal << ", global "
                 << global << "; ";
        }
      }
    }
  }
  std::ostringstream ok;
  ok << "max nodal " << worst_nodal << ", max global " << worst_global;
  r.detail = r.passed ? ok.str() : detail.str();
  return r;
}

SuiteResult check_jacobian(std::uint64_t seed) {
  SuiteResult r{"jacobian vs finite differences", true, {}};
  std::ostringstream detail;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 0.5);
  double worst = 0.0;
  for (auto [e, n] : {std::pair{6, 32}, std::pair{20, 128}}) {
    const Problem p = builtin_problem("paper-test", pow2(-e));
    MeshParams params;
    params.n = n;
    params.epsilon = p.epsilon();
    const Mesh mesh = generate_mesh(params);
    const DiscreteOperator op(p, mesh);
    std::vector<double> y(n + 1, 0.0);
    for (int i = 1; i < n; ++i) {
      y[i] = dist(rng);
    }
    const TridiagonalSystem jac = op.jacobian(y);
    const double step = 1e-6;
    double max_entry = 0.0;
    double max_diff = 0.0;
    for (int col = 1; col < n; ++col) {
      auto plus = y;
      auto minus = y;
      plus[col] += step;
      minus[col] -= step;
      const auto fp = op.residual(plus);
      const auto fm = op.residual(minus);
      for (int row = std::max(1, col - 1); row <= std::min(n - 1, col + 1); ++row) {
        const double fd = (fp[row] - fm[row]) / (2.0 * step);
        const std::size_t k = row - 1;
        const double an = col == row ? jac.diag[k] : (col < row ? jac.sub[k] : jac.super[k]);
        max_entry = std::max(max_entry, std::abs(an));
        max_diff = std::max(max_diff, std::abs(an - fd));
      }
    }
    const double rel = max_diff / max_entry;
    worst = std::max(worst, rel);
    if (!(rel < 1e-6)) {
      r.passed = false;
      detail << "eps=2^-" << e << " N=" << n << ": rel err " << rel << "; ";
    }
  }
  std::ostringstream ok;
  ok << "max rel err " << worst;
  r.detail = r.passed ? ok.str() : detail.str();
  return r;
}

std::vector<SuiteResult> run_all_checks(const CheckOptions& opts) {
  return {check_mesh_invariants(), check_coefficient_identities(opts.sabotage),
          check_stability(opts.trials, opts.seed), check_fitted_exactness(), check_jacobian(opts.seed)};
}

}  // namespace spbvp::cli

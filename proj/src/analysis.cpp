#include "spbvp/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <limits>
#include <random>

namespace spbvp {

double nodal_error(const DiscreteSolution& sol, const Problem& p) {
  if (!p.has_exact()) {
    throw InvalidArgument("nodal_error: problem '" + p.name() + "' has no exact solution");
  }
  double err = 0.0;
  for (std::size_t i = 0; i < sol.ybar.size(); ++i) {
    err = std::max(err, std::abs(exact_eval(p, sol.mesh.x(i)) - sol.ybar[i]));
  }
  return err;
}

double convergence_order(double e_n, double e_2n, int k) {
  if (!(e_n > 0.0) || !(e_2n > 0.0)) {
    throw InvalidArgument("convergence_order: errors must be positive");
  }
  if (k < 1) {
    throw InvalidArgument("convergence_order: k must be at least 1");
  }
  return (std::log(e_n) - std::log(e_2n)) / std::log(2.0 * k / (k + 1.0));
}

double classical_order(double e_n, double e_2n) {
  if (!(e_n > 0.0) || !(e_2n > 0.0)) {
    throw InvalidArgument("classical_order: errors must be positive");
  }
  return std::log(e_n / e_2n) / std::log(2.0);
}

RegionErrors region_errors(const GlobalSolution& g, const Problem& p, int samples_per_interval) {
  if (!p.has_exact()) {
    throw InvalidArgument("region_errors: problem '" + p.name() + "' has no exact solution");
  }
  if (samples_per_interval < 1) {
    throw InvalidArgument("region_errors: need at least one sample per interval");
  }
  const Mesh& mesh = g.mesh();
  const int n = mesh.n();
  const int split = mesh.params().transition_index();

  RegionErrors r;
  r.degenerate = mesh.degenerate();
  for (int i = 0; i < n; ++i) {
    const double xl = mesh.x(i);
    const double h = mesh.h()[i];
    double local = 0.0;
    for (int j = 0; j <= samples_per_interval; ++j) {
      const double x = j == samples_per_interval ? mesh.x(i + 1) : xl + h * j / samples_per_interval;
      local = std::max(local, std::abs(exact_eval(p, x) - g.eval_piece(i, x)));
    }
    if (r.degenerate || (i >= split && i < n - split)) {
      r.interior = std::max(r.interior, local);
    } else if (i < split) {
      r.layer_left = std::max(r.layer_left, local);
    } else {
      r.layer_right = std::max(r.layer_right, local);
    }
  }
  r.global_max = std::max({r.layer_left, r.interior, r.layer_right});
  return r;
}

StabilityReport stability_experiment(const Problem& p, const Mesh& mesh, int trials, std::uint64_t seed) {
  if (trials < 1) {
    throw InvalidArgument("stability_experiment: trials must be at least 1");
  }
  const DiscreteOperator op(p, mesh);
  const std::size_t size = op.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);

  StabilityReport report;
  report.trials = trials;
  report.min_ratio = std::numeric_limits<double>::infinity();
  std::vector<double> w(size, 0.0), v(size, 0.0), diff(size, 0.0);
  for (int t = 0; t < trials; ++t) {
    for (std::size_t i = 1; i + 1 < size; ++i) {
      w[i] = dist(rng);
      v[i] = dist(rng);
    }
    for (std::size_t i = 0; i < size; ++i) {
      diff[i] = w[i] - v[i];
    }
    const double lhs = p.m() * max_norm(diff);
    if (lhs == 0.0) {
      ++report.skipped;
      continue;
    }
    const auto fw = op.residual(w);
    const auto fv = op.residual(v);
    for (std::size_t i = 0; i < size; ++i) {
      diff[i] = fw[i] - fv[i];
    }
    const double rhs = max_norm(diff);
    if (lhs > rhs) {
      ++report.violations;
    }
    report.min_ratio = std::min(report.min_ratio, rhs / lhs);
  }
  return report;
}

namespace {

ConvergenceRow run_cell(const ProblemFactory& factory, double epsilon, int n, const StudyOptions& opts) {
  const Problem p = factory(epsilon);
  MeshParams params;
  params.n = n;
  params.epsilon = epsilon;
  params.m = p.m();
  params.sigma = opts.sigma;
  params.q = opts.q;
  const Mesh mesh = generate_mesh(params);
  const DiscreteSolution sol = newton_solve(p, mesh, opts.newton);

  ConvergenceRow row;
  row.epsilon = epsilon;
  row.n = n;
  row.mode = opts.mode;
  row.degenerate = mesh.degenerate();
  row.converged = sol.converged;
  row.iterations = sol.iterations;
  row.e_n = nodal_error(sol, p);
  const bool global_applicable = opts.mode == GlobalMode::plain || !mesh.degenerate();
  if (opts.global_errors && sol.converged && global_applicable) {
    const auto g = build_global(sol, p, opts.mode, opts.source);
    row.regions = region_errors(g, p, opts.samples_per_interval);
  }
  return row;
}

template <typename T>
std::optional<double> order_or_none(T&& fn, double a, double b) {
  if (a > 0.0 && b > 0.0) {
    return fn(a, b);
  }
  return std::nullopt;
}

}  // namespace

ConvergenceReport convergence_study(const ProblemFactory& factory, const std::vector<double>& epsilons,
                                    const std::vector<int>& ns, const StudyOptions& opts) {
  if (epsilons.empty() || ns.empty()) {
    throw InvalidArgument("convergence_study: epsilon and N lists must be nonempty");
  }
  for (std::size_t j = 0; j < ns.size(); ++j) {
    if (ns[j] < 4 || ns[j] % 4 != 0) {
      throw InvalidArgument("convergence_study: every N must be a positive multiple of 4");
    }
    if (j > 0 && ns[j] != 2 * ns[j - 1]) {
      throw InvalidArgument("convergence_study: N list must be strictly doubling");
    }
  }
  opts.newton.validate();

  ConvergenceReport report;
  report.epsilons = epsilons;
  report.ns = ns;
  report.mode = opts.mode;
  report.rows.resize(epsilons.size() * ns.size());

  if (opts.parallel) {
    std::vector<std::future<ConvergenceRow>> jobs;
    jobs.reserve(report.rows.size());
    for (double eps : epsilons) {
      for (int n : ns) {
        jobs.push_back(std::async(std::launch::async, run_cell, std::cref(factory), eps, n, std::cref(opts)));
      }
    }
    for (std::size_t r = 0; r < jobs.size(); ++r) {
      report.rows[r] = jobs[r].get();
    }
  } else {
    std::size_t r = 0;
    for (double eps : epsilons) {
      for (int n : ns) {
        report.rows[r++] = run_cell(factory, eps, n, opts);
      }
    }
  }

  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    for (std::size_t j = 0; j + 1 < ns.size(); ++j) {
      auto& row = report.rows[e * ns.size() + j];
      const auto& next = report.rows[e * ns.size() + j + 1];
      if (!row.converged || !next.converged) {
        continue;
      }
      const auto un = static_cast<unsigned>(row.n);
      const bool power_of_two = std::has_single_bit(un);
      const int k = std::countr_zero(un);
      auto ord = [k](double a, double b) { return convergence_order(a, b, k); };
      if (power_of_two) {
        row.ord = order_or_none(ord, row.e_n, next.e_n);
      }
      if (row.regions && next.regions) {
        const auto& a = *row.regions;
        const auto& b = *next.regions;
        if (power_of_two) {
          row.global_ord = order_or_none(ord, a.global_max, b.global_max);
        }
        row.interior_classical_ord = order_or_none(classical_order, a.interior, b.interior);
        const auto left = order_or_none(classical_order, a.layer_left, b.layer_left);
        const auto right = order_or_none(classical_order, a.layer_right, b.layer_right);
        if (left && right) {
          row.layer_classical_ord = std::min(*left, *right);
        }
      }
    }
  }
  return report;
}

}  // namespace spbvp

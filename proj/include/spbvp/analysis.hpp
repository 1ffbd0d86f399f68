#pragma once

#include "spbvp/global.hpp"
#include "spbvp/mesh.hpp"
#include "spbvp/problem.hpp"
#include "spbvp/scheme.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace spbvp {

/// max_i |y(x_i) - ybar_i|.
double nodal_error(const DiscreteSolution& sol, const Problem& p);

/// Rate for errors that behave like (ln N / N)^2, N = 2^k:
///   (ln E_N - ln E_2N) / ln(2k / (k + 1)).
double convergence_order(double e_n, double e_2n, int k);

/// Classical rate ln(E_N / E_2N) / ln 2.
double classical_order(double e_n, double e_2n);

/// Dense-sampled maximum errors over [0, lambda], [lambda, 1 - lambda],
/// [1 - lambda, 1] and [0, 1]. On a degenerate mesh the whole interval is
/// reported as interior and `degenerate` is set.
struct RegionErrors {
  double layer_left = 0.0;
  double interior = 0.0;
  double layer_right = 0.0;
  double global_max = 0.0;
  bool degenerate = false;
};

RegionErrors region_errors(const GlobalSolution& g, const Problem& p, int samples_per_interval = 32);

struct StabilityReport {
  int trials = 0;
  int skipped = 0;      // pairs with w == v
  int violations = 0;   // pairs with m ||w - v|| > ||F w - F v||
  double min_ratio = 0.0;  // min ||F w - F v|| / (m ||w - v||)
};

/// Random pairs with entries uniform in [-2, 2] and zero boundary entries.
StabilityReport stability_experiment(const Problem& p, const Mesh& mesh, int trials, std::uint64_t seed);

struct StudyOptions {
  NewtonOptions newton;
  double sigma = 2.0;
  double q = 0.25;
  GlobalMode mode = GlobalMode::plain;
  SourcePoint source = SourcePoint::midpoint;
  int samples_per_interval = 32;
  bool global_errors = true;  // build the global solution and measure region errors
  bool parallel = true;
};

struct ConvergenceRow {
  double epsilon = 0.0;
  int n = 0;
  double e_n = 0.0;
  std::optional<double> ord;               // nodal order against the row with 2N
  std::optional<RegionErrors> regions;     // absent when not measured or not applicable
  std::optional<double> global_ord;        // (ln N / N)^2 order of global_max
  std::optional<double> interior_classical_ord;
  std::optional<double> layer_classical_ord;  // min over the two layer regions
  bool degenerate = false;
  bool converged = false;
  int iterations = 0;
  GlobalMode mode = GlobalMode::plain;
};

struct ConvergenceReport {
  std::vector<double> epsilons;
  std::vector<int> ns;
  GlobalMode mode = GlobalMode::plain;
  std::vector<ConvergenceRow> rows;  // ordered by (epsilon index, N index)

  const ConvergenceRow& at(std::size_t eps_index, std::size_t n_index) const {
    return rows[eps_index * ns.size() + n_index];
  }
};

using ProblemFactory = std::function<Problem(double epsilon)>;

/// Solves every (epsilon, N) pair and fills the orders down each epsilon
/// column. Rows whose solve did not converge carry no orders. The N list
/// must be strictly doubling powers of two, each divisible by 4. Output is
/// independent of execution order.
ConvergenceReport convergence_study(const ProblemFactory& factory, const std::vector<double>& epsilons,
                                    const std::vector<int>& ns, const StudyOptions& opts = {});

}  // namespace spbvp

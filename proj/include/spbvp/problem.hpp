#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spbvp {

/// Thrown when a problem, mesh or configuration violates its structural assumptions.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

using RhsFunction = std::function<double(double x, double y)>;
using ExactFunction = std::function<double(double x)>;

/// Semilinear reaction-diffusion problem
///
///   eps^2 y'' = f(x, y),  x in (0, 1),  y(0) = left,  y(1) = right,
///
/// with m <= f_y <= gamma. Boundary data default to zero; nonzero data are
/// only used by the linear oracle problems.
///
/// Instances are immutable once constructed, and the constructor rejects
/// eps outside (0, 1), m <= 0 and gamma < m.
class Problem {
public:
  struct Definition {
    std::string name;
    RhsFunction f;
    RhsFunction f_y;
    double m = 1.0;
    double gamma = 1.0;
    double epsilon = 0.0;
    ExactFunction exact;  // empty when no closed form is known
    double left = 0.0;
    double right = 0.0;
  };

  explicit Problem(Definition def);

  const std::string& name() const { return def_.name; }
  double epsilon() const { return def_.epsilon; }
  double m() const { return def_.m; }
  double gamma() const { return def_.gamma; }
  double left() const { return def_.left; }
  double right() const { return def_.right; }
  bool has_exact() const { return static_cast<bool>(def_.exact); }

  double f(double x, double y) const { return def_.f(x, y); }
  double f_y(double x, double y) const { return def_.f_y(x, y); }

  /// psi(x, y) = f(x, y) - gamma * y, the part of f not absorbed by the
  /// frozen operator eps^2 u'' - gamma u.
  double psi(double x, double y) const { return def_.f(x, y) - def_.gamma * y; }

  /// Fitted exponent beta = sqrt(gamma) / eps.
  double beta() const;

  const Definition& definition() const { return def_; }

private:
  Definition def_;
};

/// Names accepted by builtin_problem().
std::vector<std::string> builtin_problem_ids();

/// Registered test problems:
///  - "paper-test":   eps^2 y'' = y + (1-2x)^2 - 8 eps^2 with a known exact solution.
///  - "linear-gamma": eps^2 y'' = gamma y (gamma = 1), exact solution 0.
Problem builtin_problem(const std::string& id, double epsilon);

/// eps^2 y'' = gamma y with Dirichlet data y(0) = left, y(1) = right.
/// The scheme is nodally exact for this family.
Problem linear_gamma_problem(double epsilon, double gamma, double left, double right);

/// Rectangular sample box for the heuristic assumption check.
struct SampleGrid {
  int nx = 101;
  int ny = 101;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = -2.0;
  double y_max = 2.0;
};

struct ValidationReport {
  double min_fy_sampled = 0.0;
  double max_fy_sampled = 0.0;
  bool lower_bound_ok = false;  // f_y >= m at every sample
  bool gamma_ok = false;        // m <= f_y <= gamma at every sample
  bool boundary_ok = false;     // exact solution (if any) matches the boundary data
  std::vector<std::string> messages;

  bool ok() const { return gamma_ok && boundary_ok; }
};

/// Samples f_y on a finite grid. This is a heuristic: passing it does not
/// prove the bounds on all of [0,1] x R.
ValidationReport validate_problem(const Problem& p, const SampleGrid& grid = {});

/// Exact solution at x in [0, 1]; throws when the problem has none.
double exact_eval(const Problem& p, double x);

}  // namespace spbvp

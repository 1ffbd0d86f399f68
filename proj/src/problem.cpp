#include "spbvp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spbvp {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

void require(bool condition, const std::string& message) {
  if (!condition) {
    throw InvalidArgument(message);
  }
}

// sinh(a) / sinh(b) for 0 <= a <= b, with only non-positive exponents.
double sinh_ratio(double a, double b) {
  return std::exp(a - b) * std::expm1(-2.0 * a) / std::expm1(-2.0 * b);
}

}  // namespace

Problem::Problem(Definition def) : def_(std::move(def)) {
  require(static_cast<bool>(def_.f) && static_cast<bool>(def_.f_y),
          "problem '" + def_.name + "': f and f_y must be provided");
  require(def_.epsilon > 0.0 && def_.epsilon < 1.0,
          "problem '" + def_.name + "': epsilon must lie in (0, 1)");
  require(def_.m > 0.0, "problem '" + def_.name + "': m must be positive");
  require(def_.gamma >= def_.m, "problem '" + def_.name + "': gamma must satisfy gamma >= m");
  require(std::isfinite(def_.left) && std::isfinite(def_.right),
          "problem '" + def_.name + "': boundary data must be finite");
}

double Problem::beta() const { return std::sqrt(def_.gamma) / def_.epsilon; }

std::vector<std::string> builtin_problem_ids() { return {"paper-test", "linear-gamma"}; }

Problem builtin_problem(const std::string& id, double epsilon) {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");

  if (id == "paper-test") {
    const double eps2 = epsilon * epsilon;
    Problem::Definition def;
    def.name = id;
    def.epsilon = epsilon;
    def.m = 1.0;
    def.gamma = 1.0;
    def.f = [eps2](double x, double y) {
      const double s = 1.0 - 2.0 * x;
      return y + s * s - 8.0 * eps2;
    };
    def.f_y = [](double, double) { return 1.0; };
    def.exact = [epsilon](double x) {
      // Both layer terms and the normalisation use non-positive exponents only.
      const double layers = std::exp(-x / epsilon) + std::exp(-(1.0 - x) / epsilon);
      return layers / (1.0 + std::exp(-1.0 / epsilon)) + 4.0 * x * (1.0 - x) - 1.0;
    };
    return Problem(std::move(def));
  }
  if (id == "linear-gamma") {
    return linear_gamma_problem(epsilon, 1.0, 0.0, 0.0);
  }

  std::ostringstream msg;
  msg << "unknown problem id '" << id << "' (known:";
  for (const auto& known : builtin_problem_ids()) {
    msg << ' ' << known;
  }
  msg << ')';
  throw InvalidArgument(msg.str());
}

Problem linear_gamma_problem(double epsilon, double gamma, double left, double right) {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(gamma > 0.0, "gamma must be positive");

  Problem::Definition def;
  def.name = "linear-gamma";
  def.epsilon = epsilon;
  def.m = gamma;
  def.gamma = gamma;
  def.left = left;
  def.right = right;
  def.f = [gamma](double, double y) { return gamma * y; };
  def.f_y = [gamma](double, double) { return gamma; };
  const double beta = std::sqrt(gamma) / epsilon;
  def.exact = [beta, left, right](double x) {
    return left * sinh_ratio(beta * (1.0 - x), beta) + right * sinh_ratio(beta * x, beta);
  };
  return Problem(std::move(def));
}

ValidationReport validate_problem(const Problem& p, const SampleGrid& grid) {
  ValidationReport report;
  report.messages.emplace_back("f_y bounds are checked on a finite sample grid only; this is a heuristic, not a proof");

  const int nx = std::max(grid.nx, 2);
  const int ny = std::max(grid.ny, 2);
  double min_fy = std::numeric_limits<double>::infinity();
  double max_fy = -std::numeric_limits<double>::infinity();
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  for (int i = 0; i < nx; ++i) {
    const double x = grid.x_min + (grid.x_max - grid.x_min) * i / (nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double y = grid.y_min + (grid.y_max - grid.y_min) * j / (ny - 1);
      const double fy = p.f_y(x, y);
      if (fy < min_fy) {
        min_fy = fy;
        min_x = x;
        min_y = y;
      }
      if (fy > max_fy) {
        max_fy = fy;
        max_x = x;
        max_y = y;
      }
    }
  }

  report.min_fy_sampled = min_fy;
  report.max_fy_sampled = max_fy;
  report.lower_bound_ok = min_fy >= p.m();
  report.gamma_ok = report.lower_bound_ok && max_fy <= p.gamma();

  if (!report.lower_bound_ok) {
    std::ostringstream msg;
    msg << "monotonicity condition f_y >= m > 0 violated: f_y(" << min_x << ", " << min_y
        << ") = " << min_fy << " < m = " << p.m();
    report.messages.push_back(msg.str());
  }
  if (max_fy > p.gamma()) {
    std::ostringstream msg;
    msg << "gamma >= f_y violated: f_y(" << max_x << ", " << max_y << ") = " << max_fy
        << " > gamma = " << p.gamma();
    report.messages.push_back(msg.str());
  }

  report.boundary_ok = true;
  if (p.has_exact()) {
    const double e0 = std::abs(exact_eval(p, 0.0) - p.left());
    const double e1 = std::abs(exact_eval(p, 1.0) - p.right());
    if (e0 > kBoundaryTolerance || e1 > kBoundaryTolerance) {
      report.boundary_ok = false;
      std::ostringstream msg;
      msg << "exact solution does not match boundary data: |y(0) - left| = " << e0
          << ", |y(1) - right| = " << e1;
      report.messages.push_back(msg.str());
    }
  }
  return report;
}

double exact_eval(const Problem& p, double x) {
  if (!p.has_exact()) {
    throw InvalidArgument("problem '" + p.name() + "' has no exact solution");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("exact_eval: x must lie in [0, 1]");
  }
  return p.definition().exact(x);
}

}  // namespace spbvp

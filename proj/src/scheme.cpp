#include "spbvp/scheme.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace spbvp {

namespace {

constexpr double kRoundingFloorFactor = 16.0;

double row_sum_norm(const TridiagonalSystem& sys) {
  double result = 0.0;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    result = std::max(result, std::abs(sys.sub[k]) + std::abs(sys.diag[k]) + std::abs(sys.super[k]));
  }
  return result;
}

}  // namespace

IntervalCoefficients interval_coefficients(double beta, double h) {
  if (!(beta > 0.0) || !(h > 0.0)) {
    throw InvalidArgument("interval_coefficients: beta and h must be positive");
  }
  IntervalCoefficients c;
  c.beta_h = beta * h;
  if (c.beta_h > kAsymptoticBetaH) {
    c.a = 0.0;
    c.d = 1.0;
    c.delta_d = 1.0;
    return c;
  }
  c.a = 1.0 / std::sinh(c.beta_h);
  c.d = 1.0 / std::tanh(c.beta_h);
  c.delta_d = std::tanh(0.5 * c.beta_h);
  return c;
}

double max_norm(std::span<const double> u) {
  double result = 0.0;
  for (double v : u) {
    result = std::max(result, std::abs(v));
  }
  return result;
}

std::vector<double> TridiagonalSystem::apply(std::span<const double> x) const {
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double v = diag[k] * x[k];
    if (k > 0) {
      v += sub[k] * x[k - 1];
    }
    if (k + 1 < n) {
      v += super[k] * x[k + 1];
    }
    out[k] = v;
  }
  return out;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
  const std::size_t n = sys.size();
  if (sys.sub.size() != n || sys.super.size() != n || sys.rhs.size() != n) {
    throw InvalidArgument("solve_tridiagonal: inconsistent array lengths");
  }
  if (n == 0) {
    return {};
  }

  std::vector<double> c(n);
  std::vector<double> x(n);
  double pivot = sys.diag[0];
  if (pivot == 0.0) {
    throw SingularMatrixError("solve_tridiagonal: zero pivot in row 0");
  }
  c[0] = sys.super[0] / pivot;
  x[0] = sys.rhs[0] / pivot;
  for (std::size_t k = 1; k < n; ++k) {
    pivot = sys.diag[k] - sys.sub[k] * c[k - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw SingularMatrixError("solve_tridiagonal: zero pivot in row " + std::to_string(k));
    }
    c[k] = sys.super[k] / pivot;
    x[k] = (sys.rhs[k] - sys.sub[k] * x[k - 1]) / pivot;
  }
  for (std::size_t k = n - 1; k-- > 0;) {
    x[k] -= c[k] * x[k + 1];
  }
  return x;
}

DiscreteOperator::DiscreteOperator(const Problem& problem, const Mesh& mesh)
    : problem_(problem), mesh_(mesh) {
  const double beta = problem.beta();
  const auto& h = mesh.h();
  coeffs_.reserve(h.size());
  midpoints_.reserve(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    coeffs_.push_back(interval_coefficients(beta, h[j]));
    midpoints_.push_back(0.5 * (mesh.x(j) + mesh.x(j + 1)));
  }
}

void DiscreteOperator::check_length(std::span<const double> ybar) const {
  if (ybar.size() != size()) {
    throw InvalidArgument("discrete operator: vector length must be N + 1");
  }
}

std::vector<double> DiscreteOperator::residual(std::span<const double> ybar) const {
  check_length(ybar);
  const std::size_t n = coeffs_.size();
  const double gamma = problem_.gamma();

  std::vector<double> fbar(n);
  for (std::size_t j = 0; j < n; ++j) {
    fbar[j] = problem_.f(midpoints_[j], 0.5 * (ybar[j] + ybar[j + 1]));
  }

  std::vector<double> out(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const auto& left = coeffs_[i - 1];
    const auto& right = coeffs_[i];
    const double sl = 0.5 * left.a_plus_d();
    const double sr = 0.5 * right.a_plus_d();
    // sl y_{i-1} - (sl + sr) y_i + sr y_{i+1}, grouped as differences to limit rounding
    // when s = a + d is large on fine layer intervals.
    const double bracket = sl * (ybar[i - 1] - ybar[i]) + sr * (ybar[i + 1] - ybar[i]) -
                           left.delta_d / gamma * fbar[i - 1] - right.delta_d / gamma * fbar[i];
    out[i] = gamma / (left.delta_d + right.delta_d) * bracket;
  }
  return out;
}

TridiagonalSystem DiscreteOperator::jacobian(std::span<const double> ybar) const {
  check_length(ybar);
  const std::size_t n = coeffs_.size();
  const double gamma = problem_.gamma();

  // Each fbar_j depends on y_j and y_{j+1} through their mean: d fbar_j / d y = f_y / 2.
  std::vector<double> half_fy(n);
  for (std::size_t j = 0; j < n; ++j) {
    half_fy[j] = 0.5 * problem_.f_y(midpoints_[j], 0.5 * (ybar[j] + ybar[j + 1]));
  }

  TridiagonalSystem sys;
  const std::size_t rows = n - 1;
  sys.sub.assign(rows, 0.0);
  sys.diag.assign(rows, 0.0);
  sys.super.assign(rows, 0.0);
  sys.rhs.assign(rows, 0.0);
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t i = k + 1;
    const auto& left = coeffs_[i - 1];
    const auto& right = coeffs_[i];
    const double sl = 0.5 * left.a_plus_d();
    const double sr = 0.5 * right.a_plus_d();
    const double wl = left.delta_d / gamma * half_fy[i - 1];
    const double wr = right.delta_d / gamma * half_fy[i];
    const double scale = gamma / (left.delta_d + right.delta_d);
    sys.sub[k] = scale * (sl - wl);
    sys.diag[k] = scale * (-(sl + sr) - wl - wr);
    sys.super[k] = scale * (sr - wr);
  }
  sys.sub[0] = 0.0;
  sys.super[rows - 1] = 0.0;
  return sys;
}

std::vector<double> residual(const Problem& p, const Mesh& mesh, std::span<const double> ybar) {
  return DiscreteOperator(p, mesh).residual(ybar);
}

TridiagonalSystem jacobian(const Problem& p, const Mesh& mesh, std::span<const double> ybar) {
  return DiscreteOperator(p, mesh).jacobian(ybar);
}

void NewtonOptions::validate() const {
  if (!(tol > 0.0)) {
    throw InvalidArgument("newton: tolerance must be positive");
  }
  if (max_iter < 0) {
    throw InvalidArgument("newton: max_iter must be non-negative");
  }
}

DiscreteSolution newton_solve(const Problem& p, const Mesh& mesh, const NewtonOptions& opts) {
  opts.validate();
  const DiscreteOperator op(p, mesh);
  const std::size_t size = op.size();

  std::vector<double> y;
  if (const auto* constant = std::get_if<double>(&opts.initial_guess)) {
    y.assign(size, *constant);
  } else {
    y = std::get<std::vector<double>>(opts.initial_guess);
    if (y.size() != size) {
      throw InvalidArgument("newton: initial guess must have N + 1 entries");
    }
  }
  y.front() = p.left();
  y.back() = p.right();

  DiscreteSolution sol{mesh, {}, 0, 0.0, false, {}};
  int iter = 0;
  while (true) {
    auto f = op.residual(y);
    const double norm = max_norm(f);
    sol.residual_history.push_back(norm);
    if (norm <= opts.tol) {
      sol.converged = true;
      break;
    }
    if (!std::isfinite(norm)) {
      break;
    }
    auto sys = op.jacobian(y);
    // ||F|| cannot drop below the effect of rounding y itself, ~ eps ||J|| ||y||,
    // which exceeds tol on fine meshes where ||J|| grows like (N / (beta h_max))^2.
    if (norm <= kRoundingFloorFactor * DBL_EPSILON * row_sum_norm(sys) * std::max(1.0, max_norm(y))) {
      sol.converged = true;
      break;
    }
    if (iter == opts.max_iter) {
      break;
    }
    for (std::size_t k = 0; k < sys.size(); ++k) {
      sys.rhs[k] = -f[k + 1];
    }
    const auto delta = solve_tridiagonal(sys);
    for (std::size_t k = 0; k < delta.size(); ++k) {
      y[k + 1] += delta[k];
    }
    ++iter;
  }

  sol.ybar = std::move(y);
  sol.iterations = iter;
  sol.final_residual = sol.residual_history.back();
  return sol;
}

}  // namespace spbvp

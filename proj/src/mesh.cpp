#include "spbvp/mesh.hpp"

#include "spbvp/problem.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace spbvp {

namespace {

// Layer steps are all equal in exact arithmetic; allow rounding noise of the
// nodes themselves when checking that the step sizes are graded.
constexpr double kGradingSlack = 8.0 * DBL_EPSILON;

double cubic_coefficient(double lambda, double q) {
  const double w = 0.5 - q;
  return 0.5 * (1.0 - lambda / q) / (w * w * w);
}

}  // namespace

void MeshParams::validate() const {
  if (n < 4 || n % 4 != 0) {
    throw InvalidArgument("mesh: N must be a positive multiple of 4");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("mesh: epsilon must lie in (0, 1)");
  }
  if (!(m > 0.0)) {
    throw InvalidArgument("mesh: m must be positive");
  }
  if (!(sigma > 0.0)) {
    throw InvalidArgument("mesh: sigma must be positive");
  }
  if (!(q > 0.0 && q < 0.5)) {
    throw InvalidArgument("mesh: q must lie in (0, 1/2)");
  }
  const double qn = q * n;
  if (std::abs(qn - std::round(qn)) > 1e-9 || std::round(qn) < 1.0) {
    throw InvalidArgument("mesh: q * N must be a positive integer");
  }
}

int MeshParams::transition_index() const { return static_cast<int>(std::lround(q * n)); }

TransitionPoint transition_point(const MeshParams& params) {
  params.validate();
  const double candidate = params.sigma * params.epsilon * std::log(static_cast<double>(params.n)) /
                           std::sqrt(params.m);
  if (candidate >= params.q) {
    return {params.q, true};
  }
  return {candidate, false};
}

double generating_function(double t, double lambda, double q) {
  if (!(lambda > 0.0 && lambda < q && q < 0.5)) {
    throw InvalidArgument("generating_function: requires 0 < lambda < q < 1/2");
  }
  if (t > 0.5) {
    return 1.0 - generating_function(1.0 - t, lambda, q);
  }
  const double slope = lambda / q;
  if (t <= q) {
    return slope * t;
  }
  const double s = t - q;
  return cubic_coefficient(lambda, q) * s * s * s + slope * t;
}

double generating_function_derivative(double t, double lambda, double q) {
  if (!(lambda > 0.0 && lambda < q && q < 0.5)) {
    throw InvalidArgument("generating_function_derivative: requires 0 < lambda < q < 1/2");
  }
  if (t > 0.5) {
    return generating_function_derivative(1.0 - t, lambda, q);
  }
  const double slope = lambda / q;
  if (t <= q) {
    return slope;
  }
  const double s = t - q;
  return 3.0 * cubic_coefficient(lambda, q) * s * s + slope;
}

Mesh::Mesh(MeshParams params, std::vector<double> nodes, double lambda, bool degenerate)
    : params_(params), nodes_(std::move(nodes)), lambda_(lambda), degenerate_(degenerate) {
  if (nodes_.size() != static_cast<std::size_t>(params_.n) + 1) {
    throw InvalidArgument("mesh: node count must be N + 1");
  }
  h_.resize(params_.n);
  for (int i = 0; i < params_.n; ++i) {
    h_[i] = nodes_[i + 1] - nodes_[i];
  }
}

std::size_t Mesh::locate(double x) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  if (it == nodes_.begin()) {
    return 0;
  }
  const auto j = static_cast<std::size_t>(it - nodes_.begin());
  return std::min(j - 1, static_cast<std::size_t>(params_.n - 1));
}

Mesh generate_mesh(const MeshParams& params) {
  const auto [lambda, degenerate] = transition_point(params);
  const int n = params.n;
  const int half = n / 2;
  std::vector<double> x(n + 1);

  if (degenerate) {
    for (int i = 0; i <= n; ++i) {
      x[i] = static_cast<double>(i) / n;
    }
  } else {
    for (int i = 0; i < half; ++i) {
      x[i] = generating_function(static_cast<double>(i) / n, lambda, params.q);
    }
    x[params.transition_index()] = lambda;
    x[half] = 0.5;
    for (int i = 0; i < half; ++i) {
      x[n - i] = 1.0 - x[i];
    }
  }
  x[0] = 0.0;
  x[n] = 1.0;
  return Mesh(params, std::move(x), lambda, degenerate);
}

MeshDiagnostics mesh_diagnostics(const Mesh& mesh) {
  MeshDiagnostics d;
  const int n = mesh.n();
  const auto& x = mesh.nodes();
  const auto& h = mesh.h();

  // ||phi'|| <= 3 / (2 (1/2 - q)) and ||phi''|| <= 3 / (1/2 - q)^2; 6 and 48 for q = 1/4.
  const double w = 0.5 - mesh.params().q;
  d.h_bound = 1.5 / w / n;
  d.h_jump_bound = 3.0 / (w * w) / (static_cast<double>(n) * n);
  d.max_h = *std::max_element(h.begin(), h.end());

  d.strictly_increasing = true;
  for (int i = 0; i < n; ++i) {
    if (!(x[i + 1] > x[i])) {
      d.strictly_increasing = false;
    }
  }

  d.graded = true;
  for (int i = 0; i + 1 < n; ++i) {
    const double jump = h[i + 1] - h[i];
    d.max_h_jump = std::max(d.max_h_jump, std::abs(jump));
    const double slack = kGradingSlack * x[i + 2];
    // Intervals i and i+1 both inside [0, 1/2]: steps grow. Inside [1/2, 1]: steps shrink.
    if (i + 1 < n / 2 && jump < -slack) {
      d.graded = false;
    }
    if (i >= n / 2 && jump > slack) {
      d.graded = false;
    }
  }

  for (int i = 0; i <= n; ++i) {
    d.symmetry_defect = std::max(d.symmetry_defect, std::abs(x[i] + x[n - i] - 1.0));
  }
  return d;
}

}  // namespace spbvp

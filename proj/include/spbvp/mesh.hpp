#pragma once

#include <cstddef>
#include <vector>

namespace spbvp {

/// Parameters of the layer-adapted (modified Shishkin) mesh.
struct MeshParams {
  int n = 32;             // number of intervals, divisible by 4 and with q*n integral
  double epsilon = 0.5;
  double m = 1.0;
  double sigma = 2.0;
  double q = 0.25;        // fraction of the intervals spent in each layer

  /// Throws InvalidArgument on violated constraints.
  void validate() const;
  /// Index of the transition node, q * n.
  int transition_index() const;
};

struct TransitionPoint {
  double lambda = 0.0;
  bool degenerate = false;  // sigma eps ln N / sqrt(m) >= q, so lambda = q
};

/// lambda = min(sigma eps ln N / sqrt(m), q).
TransitionPoint transition_point(const MeshParams& params);

/// Generating function of the non-degenerate mesh:
///
///   phi(t) = (lambda/q) t                        on [0, q]
///   phi(t) = p (t - q)^3 + (lambda/q) t          on [q, 1/2]
///   phi(t) = 1 - phi(1 - t)                      on [1/2, 1]
///
/// with p = (1 - lambda/q) / (2 (1/2 - q)^3), so that phi(1/2) = 1/2 and phi
/// is C^1 (indeed C^2) at t = q. Requires 0 < lambda < q < 1/2.
double generating_function(double t, double lambda, double q);

/// Derivative of generating_function().
double generating_function_derivative(double t, double lambda, double q);

class Mesh {
public:
  Mesh(MeshParams params, std::vector<double> nodes, double lambda, bool degenerate);

  int n() const { return params_.n; }
  const std::vector<double>& nodes() const { return nodes_; }
  double x(std::size_t i) const { return nodes_[i]; }
  /// h_i = x_{i+1} - x_i, i = 0 .. n-1.
  const std::vector<double>& h() const { return h_; }
  double lambda() const { return lambda_; }
  bool degenerate() const { return degenerate_; }
  const MeshParams& params() const { return params_; }

  /// Index i of the interval [x_i, x_{i+1}] containing x. Nodes belong to
  /// the interval on their left, except x = 0.
  std::size_t locate(double x) const;

private:
  MeshParams params_;
  std::vector<double> nodes_;
  std::vector<double> h_;
  double lambda_;
  bool degenerate_;
};

/// Non-degenerate: x_i = phi(i/N) on the left half, mirrored exactly
/// (x_{N-i} = 1 - x_i) on the right. Degenerate: uniform x_i = i/N.
Mesh generate_mesh(const MeshParams& params);

struct MeshDiagnostics {
  double max_h = 0.0;
  double max_h_jump = 0.0;        // max |h_{i+1} - h_i|
  bool graded = false;            // h non-decreasing on [0,1/2], non-increasing on [1/2,1]
  bool strictly_increasing = false;
  double symmetry_defect = 0.0;   // max |x_i + x_{N-i} - 1|
  double h_bound = 0.0;           // 6 / N when q = 1/4
  double h_jump_bound = 0.0;      // 48 / N^2 when q = 1/4

  bool within_bounds() const { return max_h <= h_bound && max_h_jump <= h_jump_bound; }
};

MeshDiagnostics mesh_diagnostics(const Mesh& mesh);

}  // namespace spbvp

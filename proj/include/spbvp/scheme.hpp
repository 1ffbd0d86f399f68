#pragma once

#include "spbvp/mesh.hpp"
#include "spbvp/problem.hpp"

#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace spbvp {

/// Hyperbolic coefficients of one mesh interval.
///   a = 1/sinh(beta h),  d = 1/tanh(beta h),  delta_d = d - a = tanh(beta h / 2).
struct IntervalCoefficients {
  double a = 0.0;
  double d = 1.0;
  double delta_d = 1.0;
  double beta_h = 0.0;

  /// a + d = coth(beta h / 2); summed directly, no cancellation.
  double a_plus_d() const { return a + d; }
};

/// Above this beta*h the asymptotic values a = 0, d = delta_d = 1 are
/// returned; the neglected terms are below 2 exp(-350) < 1e-150.
inline constexpr double kAsymptoticBetaH = 350.0;

/// delta_d is always tanh(beta h / 2), never the difference d - a.
IntervalCoefficients interval_coefficients(double beta, double h);

/// max_i |u_i|.
double max_norm(std::span<const double> u);

class SingularMatrixError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Tridiagonal system over the interior unknowns: row k couples
/// x_{k-1}, x_k, x_{k+1}. sub[0] and super[size-1] are ignored.
struct TridiagonalSystem {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;
  std::vector<double> rhs;

  std::size_t size() const { return diag.size(); }
  /// (A x)_k.
  std::vector<double> apply(std::span<const double> x) const;
};

/// Thomas algorithm. Throws SingularMatrixError on a zero pivot.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

/// Discrete operator F of the fitted scheme on a fixed mesh.
///
/// Row i (1 <= i <= N-1) uses the coefficients of the interval to its left,
/// [x_{i-1}, x_i], and to its right, [x_i, x_{i+1}]:
///
///   (F y)_i = gamma / (dd_L + dd_R) * [ s_L/2 y_{i-1} - (s_L + s_R)/2 y_i + s_R/2 y_{i+1}
///                                       - dd_L/gamma fbar_{i-1} - dd_R/gamma fbar_i ]
///
/// with s = a + d, dd = delta_d and fbar_j = f at the midpoint of interval j
/// and the mean of its endpoint values. (F y)_0 = (F y)_N = 0.
///
/// The operator keeps references to the problem and mesh; both must outlive it.
class DiscreteOperator {
public:
  DiscreteOperator(const Problem& problem, const Mesh& mesh);

  std::size_t size() const { return coeffs_.size() + 1; }  // N + 1
  const std::vector<IntervalCoefficients>& coefficients() const { return coeffs_; }

  std::vector<double> residual(std::span<const double> ybar) const;
  /// Analytic Jacobian of the interior rows with respect to the interior unknowns.
  TridiagonalSystem jacobian(std::span<const double> ybar) const;

private:
  void check_length(std::span<const double> ybar) const;

  const Problem& problem_;
  const Mesh& mesh_;
  std::vector<IntervalCoefficients> coeffs_;
  std::vector<double> midpoints_;
};

std::vector<double> residual(const Problem& p, const Mesh& mesh, std::span<const double> ybar);
TridiagonalSystem jacobian(const Problem& p, const Mesh& mesh, std::span<const double> ybar);

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 50;
  /// Constant initial value, or a full vector of N+1 values.
  std::variant<double, std::vector<double>> initial_guess = -0.5;

  void validate() const;
};

struct DiscreteSolution {
  Mesh mesh;
  std::vector<double> ybar;
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  std::vector<double> residual_history;  // ||F(y^k)||, k = 0 .. iterations
};

/// Plain Newton iteration y <- y + delta, J(y) delta = -F(y), stopping when
/// ||F(y)|| <= tol, or when ||F(y)|| is at the rounding floor
/// 16 eps_mach ||J||_inf max(1, ||y||_inf) (fine meshes with large ||J||).
/// Boundary entries are pinned to the problem's boundary data.
/// Non-convergence is reported through `converged`, not thrown.
DiscreteSolution newton_solve(const Problem& p, const Mesh& mesh, const NewtonOptions& opts = {});

}  // namespace spbvp

#pragma once

#include "spbvp/mesh.hpp"
#include "spbvp/problem.hpp"
#include "spbvp/scheme.hpp"

#include <string>
#include <vector>

namespace spbvp {

/// Green's function of eps^2 u'' - gamma u on one interval [x_left, x_right]
/// with homogeneous Dirichlet data.
struct GreenKernel {
  double beta = 1.0;
  double x_left = 0.0;
  double x_right = 1.0;
  double gamma = 1.0;

  GreenKernel(double beta, double x_left, double x_right, double gamma);

  double h() const { return x_right - x_left; }
};

struct BasisValues {
  double u1 = 0.0;  // sinh(beta (x_right - x)) / sinh(beta h)
  double u2 = 0.0;  // sinh(beta (x - x_left)) / sinh(beta h)
};

/// Evaluated through factors exp(-t) and expm1(-t), t >= 0, so nothing
/// overflows for large beta h.
BasisValues basis_eval(const GreenKernel& kernel, double x);

/// Integral of the Green's function over the interval, as a function of x:
///
///   -[ sinh(B)(cosh(A) - 1) + sinh(A)(cosh(B) - 1) ] / (gamma sinh(beta h)),
///
/// A = beta (x - x_left), B = beta (x_right - x). Computed as a sum of
/// non-negative products of expm1 factors. Lies in [-1/gamma, 0].
double green_integral(const GreenKernel& kernel, double x);

enum class GlobalMode { plain, repaired };

/// Where the frozen source term psi is sampled on an exponential piece.
enum class SourcePoint {
  midpoint,    // psi at the interval midpoint and the mean nodal value
  left_point,  // psi(x_i, ybar_i)
};

std::string to_string(GlobalMode mode);
GlobalMode parse_global_mode(const std::string& name);

/// Continuous global approximation assembled from a nodal solution.
///
/// Exponential piece on [x_i, x_{i+1}]:
///   ybar_i u1(x) + ybar_{i+1} u2(x) + psibar_i * green_integral(x).
/// In repaired mode the intervals N/4 .. 3N/4-1 (between lambda and
/// 1 - lambda) use the linear interpolant of the nodal values instead.
class GlobalSolution {
public:
  GlobalSolution(Mesh mesh, std::vector<double> ybar, std::vector<double> psibar, GlobalMode mode,
                 double beta, double gamma);

  double operator()(double x) const;

  const Mesh& mesh() const { return mesh_; }
  const std::vector<double>& ybar() const { return ybar_; }
  const std::vector<double>& psibar() const { return psibar_; }
  GlobalMode mode() const { return mode_; }
  bool is_linear_piece(std::size_t interval) const;
  std::size_t exponential_piece_count() const;
  std::size_t linear_piece_count() const;

  /// Evaluates interval i's piece at x (x may be any point of [x_i, x_{i+1}]).
  double eval_piece(std::size_t interval, double x) const;

private:
  Mesh mesh_;
  std::vector<double> ybar_;
  std::vector<double> psibar_;
  GlobalMode mode_;
  double beta_;
  double gamma_;
  std::size_t linear_begin_ = 0;
  std::size_t linear_end_ = 0;
};

/// Throws InvalidArgument for repaired mode on a degenerate mesh.
GlobalSolution build_global(const DiscreteSolution& sol, const Problem& p, GlobalMode mode,
                            SourcePoint source = SourcePoint::midpoint);

/// Throws InvalidArgument for x outside [0, 1].
double eval_global(const GlobalSolution& g, double x);

/// `per_interval` equispaced points on every interval plus both endpoints,
/// in increasing order; interior nodes appear once.
std::vector<double> sample_points(const Mesh& mesh, int per_interval);

}  // namespace spbvp

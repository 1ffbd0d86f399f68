#include "spbvp/global.hpp"

#include <cmath>

namespace spbvp {

namespace {

void check_in_interval(const GreenKernel& k, double x) {
  if (!(x >= k.x_left && x <= k.x_right)) {
    throw InvalidArgument("green kernel: x lies outside its interval");
  }
}

struct Arguments {
  double a;  // beta (x - x_left)
  double b;  // beta (x_right - x)
  double h;  // beta (x_right - x_left)
};

Arguments scaled_arguments(const GreenKernel& k, double x) {
  return {k.beta * (x - k.x_left), k.beta * (k.x_right - x), k.beta * (k.x_right - k.x_left)};
}

}  // namespace

GreenKernel::GreenKernel(double beta_, double x_left_, double x_right_, double gamma_)
    : beta(beta_), x_left(x_left_), x_right(x_right_), gamma(gamma_) {
  if (!(beta > 0.0) || !(gamma > 0.0) || !(x_left < x_right)) {
    throw InvalidArgument("green kernel: need beta > 0, gamma > 0 and x_left < x_right");
  }
}

BasisValues basis_eval(const GreenKernel& kernel, double x) {
  check_in_interval(kernel, x);
  const auto [a, b, h] = scaled_arguments(kernel, x);
  const double denom = std::expm1(-2.0 * h);
  // sinh(b)/sinh(h) = e^{b-h} (1 - e^{-2b}) / (1 - e^{-2h}), and b - h = -a.
  return {std::exp(-a) * std::expm1(-2.0 * b) / denom, std::exp(-b) * std::expm1(-2.0 * a) / denom};
}

double green_integral(const GreenKernel& kernel, double x) {
  check_in_interval(kernel, x);
  const auto [a, b, h] = scaled_arguments(kernel, x);
  // sinh(b)(cosh(a) - 1) / sinh(h) = (1 - e^{-2b}) (1 - e^{-a})^2 / (2 (1 - e^{-2h})), same with a <-> b.
  const double ea = std::expm1(-a);
  const double eb = std::expm1(-b);
  const double numer = -std::expm1(-2.0 * b) * ea * ea - std::expm1(-2.0 * a) * eb * eb;
  return -numer / (-2.0 * std::expm1(-2.0 * h) * kernel.gamma);
}

std::string to_string(GlobalMode mode) { return mode == GlobalMode::plain ? "plain" : "repaired"; }

GlobalMode parse_global_mode(const std::string& name) {
  if (name == "plain") {
    return GlobalMode::plain;
  }
  if (name == "repaired") {
    return GlobalMode::repaired;
  }
  throw InvalidArgument("unknown mode '" + name + "' (expected plain or repaired)");
}

GlobalSolution::GlobalSolution(Mesh mesh, std::vector<double> ybar, std::vector<double> psibar,
                               GlobalMode mode, double beta, double gamma)
    : mesh_(std::move(mesh)),
      ybar_(std::move(ybar)),
      psibar_(std::move(psibar)),
      mode_(mode),
      beta_(beta),
      gamma_(gamma) {
  const auto n = static_cast<std::size_t>(mesh_.n());
  if (ybar_.size() != n + 1 || psibar_.size() != n) {
    throw InvalidArgument("global solution: inconsistent array lengths");
  }
  if (mode_ == GlobalMode::repaired) {
    if (mesh_.degenerate()) {
      throw InvalidArgument("repaired mode requires a non-degenerate mesh (lambda < q)");
    }
    linear_begin_ = static_cast<std::size_t>(mesh_.params().transition_index());
    linear_end_ = n - linear_begin_;
  }
}

bool GlobalSolution::is_linear_piece(std::size_t interval) const {
  return interval >= linear_begin_ && interval < linear_end_;
}

std::size_t GlobalSolution::exponential_piece_count() const {
  return static_cast<std::size_t>(mesh_.n()) - linear_piece_count();
}

std::size_t GlobalSolution::linear_piece_count() const { return linear_end_ - linear_begin_; }

double GlobalSolution::eval_piece(std::size_t i, double x) const {
  const double xl = mesh_.x(i);
  const double xr = mesh_.x(i + 1);
  if (is_linear_piece(i)) {
    const double t = (x - xl) / (xr - xl);
    return ybar_[i] * (1.0 - t) + ybar_[i + 1] * t;
  }
  const GreenKernel kernel(beta_, xl, xr, gamma_);
  const auto u = basis_eval(kernel, x);
  return ybar_[i] * u.u1 + ybar_[i + 1] * u.u2 + psibar_[i] * green_integral(kernel, x);
}

double GlobalSolution::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("eval_global: x must lie in [0, 1]");
  }
  return eval_piece(mesh_.locate(x), x);
}

GlobalSolution build_global(const DiscreteSolution& sol, const Problem& p, GlobalMode mode,
                            SourcePoint source) {
  const Mesh& mesh = sol.mesh;
  const auto n = static_cast<std::size_t>(mesh.n());
  if (sol.ybar.size() != n + 1) {
    throw InvalidArgument("build_global: nodal solution has the wrong length");
  }
  if (mode == GlobalMode::repaired && mesh.degenerate()) {
    throw InvalidArgument("repaired mode requires a non-degenerate mesh (lambda < q)");
  }
  std::vector<double> psibar(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (source == SourcePoint::midpoint) {
      psibar[i] = p.psi(0.5 * (mesh.x(i) + mesh.x(i + 1)), 0.5 * (sol.ybar[i] + sol.ybar[i + 1]));
    } else {
      psibar[i] = p.psi(mesh.x(i), sol.ybar[i]);
    }
  }
  return GlobalSolution(mesh, sol.ybar, std::move(psibar), mode, p.beta(), p.gamma());
}

double eval_global(const GlobalSolution& g, double x) { return g(x); }

std::vector<double> sample_points(const Mesh& mesh, int per_interval) {
  if (per_interval < 1) {
    throw InvalidArgument("sample_points: need at least one sample per interval");
  }
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(mesh.n()) * per_interval + 1);
  for (int i = 0; i < mesh.n(); ++i) {
    const double xl = mesh.x(i);
    const double h = mesh.h()[i];
    for (int j = 0; j < per_interval; ++j) {
      xs.push_back(xl + h * j / per_interval);
    }
  }
  xs.push_back(1.0);
  return xs;
}

}  // namespace spbvp

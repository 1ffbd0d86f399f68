#include <doctest.h>

#include "approx.hpp"

#include "spbvp/mesh.hpp"
#include "spbvp/problem.hpp"

#include <cmath>

using namespace spbvp;

namespace {

MeshParams params_for(int n, int eps_exp) {
  MeshParams p;
  p.n = n;
  p.epsilon = std::ldexp(1.0, -eps_exp);
  return p;
}

}  // namespace

TEST_CASE("transition point") {
  const auto t = transition_point(params_for(32, 10));
  CHECK_FALSE(t.degenerate);
  CHECK(t.lambda == rel(2.0 * std::ldexp(1.0, -10) * std::log(32.0)));
  CHECK(t.lambda == rel(6.7690e-3).epsilon(1e-4));

  const auto d = transition_point(params_for(32, 4));
  CHECK(d.degenerate);
  CHECK(d.lambda == 0.25);

  for (int e : {2, 4, 6, 10, 20}) {
    for (int n : {8, 32, 4096}) {
      CHECK(transition_point(params_for(n, e)).lambda <= 0.25);
    }
  }
}

TEST_CASE("mesh parameter validation") {
  CHECK_THROWS_AS(params_for(30, 10).validate(), InvalidArgument);
  auto p = params_for(32, 10);
  p.q = 0.5;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = params_for(32, 10);
  p.sigma = 0.0;
  CHECK_THROWS_AS(generate_mesh(p), InvalidArgument);
  p = params_for(32, 10);
  p.epsilon = 1.0;
  CHECK_THROWS_AS(generate_mesh(p), InvalidArgument);
  p = params_for(32, 10);
  p.q = 0.3;  // q N not integral
  CHECK_THROWS_AS(generate_mesh(p), InvalidArgument);
}

TEST_CASE("generating function") {
  const double q = 0.25;
  const double lambda = 2.0 * std::ldexp(1.0, -10) * std::log(32.0);
  // p = (1 - lambda/q) / (2 (1/4)^3) = 32 (1 - lambda/q); phi(3/8) = p / 512 + (lambda/q)(3/8).
  const double p = 32.0 * (1.0 - lambda / q);
  const double expected = p / 512.0 + 1.5 * lambda;
  CHECK(generating_function(0.375, lambda, q) == rel(expected).epsilon(1e-14));
  CHECK(generating_function(0.375, lambda, q) == rel(0.0709612).epsilon(1e-6));

  CHECK(generating_function(q, lambda, q) == rel(lambda).epsilon(1e-15));
  CHECK(std::abs(generating_function(0.5, lambda, q) - 0.5) <= 1e-15);
  CHECK(generating_function(0.0, lambda, q) == 0.0);
  CHECK(std::abs(generating_function(1.0, lambda, q) - 1.0) <= 1e-15);
  CHECK(generating_function(0.8, lambda, q) == rel(1.0 - generating_function(0.2, lambda, q)));

  // Derivative against central differences, and continuity at the joins.
  for (double t : {0.1, 0.3, 0.45, 0.6, 0.9}) {
    const double h = 1e-6;
    const double fd = (generating_function(t + h, lambda, q) - generating_function(t - h, lambda, q)) / (2 * h);
    CHECK(generating_function_derivative(t, lambda, q) == rel(fd).epsilon(1e-7));
  }
  CHECK(generating_function_derivative(q - 1e-12, lambda, q) ==
        rel(generating_function_derivative(q + 1e-12, lambda, q)).epsilon(1e-9));

  CHECK_THROWS_AS(generating_function(0.3, 0.3, q), InvalidArgument);
  CHECK_THROWS_AS(generating_function(0.3, 0.0, q), InvalidArgument);
}

TEST_CASE("non-degenerate mesh") {
  const Mesh mesh = generate_mesh(params_for(32, 10));
  REQUIRE(mesh.nodes().size() == 33);
  CHECK(mesh.x(0) == 0.0);
  CHECK(mesh.x(32) == 1.0);
  CHECK(mesh.x(8) == mesh.lambda());
  CHECK(mesh.x(16) == 0.5);
  CHECK(mesh.x(24) == 1.0 - mesh.lambda());
  for (int i = 0; i <= 32; ++i) {
    CHECK(mesh.x(i) + mesh.x(32 - i) == 1.0);
  }
  for (int i = 0; i < 8; ++i) {
    CHECK(mesh.h()[i] == rel(mesh.lambda() / 8.0).epsilon(1e-12));
  }

  const auto d = mesh_diagnostics(mesh);
  CHECK(d.symmetry_defect == 0.0);
  CHECK(d.strictly_increasing);
  CHECK(d.graded);
  CHECK(d.h_bound == rel(6.0 / 32));
  CHECK(d.h_jump_bound == rel(48.0 / (32 * 32)));
  CHECK(d.max_h <= 6.0 / 32);
  CHECK(d.max_h_jump <= 48.0 / (32 * 32));
}

TEST_CASE("degenerate mesh is uniform") {
  const Mesh mesh = generate_mesh(params_for(32, 4));
  CHECK(mesh.degenerate());
  for (int i = 0; i <= 32; ++i) {
    CHECK(mesh.x(i) == i / 32.0);
  }
  const auto d = mesh_diagnostics(mesh);
  CHECK(d.max_h_jump == 0.0);
  CHECK(d.symmetry_defect == 0.0);
}

TEST_CASE("mesh bounds over the table grid") {
  for (int e : {4, 6, 10, 12, 20, 30}) {
    for (int n = 32; n <= 2048; n *= 2) {
      CAPTURE(e);
      CAPTURE(n);
      const Mesh mesh = generate_mesh(params_for(n, e));
      const auto d = mesh_diagnostics(mesh);
      CHECK(d.symmetry_defect == 0.0);
      CHECK(d.strictly_increasing);
      CHECK(d.graded);
      CHECK(d.max_h <= 6.0 / n);
      CHECK(d.max_h_jump <= 48.0 / (static_cast<double>(n) * n));
      if (!mesh.degenerate()) {
        CHECK(mesh.x(n / 4) == mesh.lambda());
      }
    }
  }
}

TEST_CASE("locate") {
  const Mesh mesh = generate_mesh(params_for(16, 10));
  CHECK(mesh.locate(0.0) == 0);
  CHECK(mesh.locate(1.0) == 15);
  CHECK(mesh.locate(mesh.x(5)) == 4);
  CHECK(mesh.locate(0.5 * (mesh.x(5) + mesh.x(6))) == 5);
  CHECK(mesh.locate(0.5) == 7);
}

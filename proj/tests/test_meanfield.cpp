#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "siggame/ode.hpp"

using namespace siggame;

namespace {

OccupationMeasure measure_2x2(double a, double b, double c, double d) {
  return OccupationMeasure::from_weights(2, 2, {a, b, c, d});
}

OccupationMeasure diagonal(int m) {
  std::vector<double> w(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i) * m + i] = 1.0 / m;
  return OccupationMeasure::from_weights(m, m, std::move(w));
}

// Two single-edge components with unequal weights: the dissipation
// vanishes but the drift does not.
OccupationMeasure lambda_not_gamma() { return measure_2x2(0.6, 0.0, 0.0, 0.4); }

}  // namespace

TEST_CASE("vector field values and tangency") {
  auto uniform = measure_2x2(0.25, 0.25, 0.25, 0.25);
  CHECK(vector_field(uniform).max_abs() == doctest::Approx(0.0));

  auto x = measure_2x2(0.5, 0.25, 0.0, 0.25);
  auto f = vector_field(x);
  CHECK(f.at(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(f.at(0, 1) == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
  CHECK(f.at(1, 0) == 0.0);
  CHECK(f.at(1, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(std::abs(f.sum()) <= 1e-15);

  for (int m = 2; m <= 5; ++m) {
    CHECK(vector_field(diagonal(m)).max_abs() == doctest::Approx(0.0));
  }

  CounterRng rng(31, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int m1 = 1 + static_cast<int>(rng.next_below(5));
    const int m2 = 1 + static_cast<int>(rng.next_below(5));
    const auto p = trial % 2 == 0
                       ? oracles::random_interior_point(m1, m2, rng)
                       : oracles::random_supported_point(m1, m2, rng);
    CHECK(std::abs(vector_field(p).sum()) <= 1e-10);
  }
}

TEST_CASE("drift vanishes exactly when all efficiencies equal H") {
  // Rest point: supported efficiencies all equal H.
  CHECK(vector_field(lambda_not_gamma()).max_abs() > 0.1);
  CHECK(dissipation(lambda_not_gamma()) <= 1e-15);

  CounterRng rng(37, 0);
  for (int trial = 0; trial < 30; ++trial) {
    auto comps = oracles::random_components(4, 5, false, true, rng);
    auto p = oracles::component_product_point(4, 5, comps, &rng);
    CHECK(vector_field(p).max_abs() <= 1e-12);
  }
}

TEST_CASE("integration from an equilibrium stays put") {
  auto uniform = measure_2x2(0.25, 0.25, 0.25, 0.25);
  auto traj = integrate(uniform, 0.01, 1000, 100);
  for (const auto& p : traj.points) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(p.at(i, j) == doctest::Approx(0.25).epsilon(1e-12));
      }
    }
  }
  CHECK(traj.min_step_potential_delta >= -1e-12);
}

TEST_CASE("integration ascends the potential and reaches a rest point") {
  auto x0 = measure_2x2(0.3, 0.2, 0.2, 0.3);
  auto traj = integrate(x0, 0.01, 10000, 100);
  CHECK(traj.potentials.back() >= traj.potentials.front() - 1e-12);
  CHECK(traj.min_step_potential_delta >= -1e-9);
  CHECK(traj.final_field_max_abs < 1e-4);

  // Simplex containment along samples.
  for (const auto& p : traj.points) {
    double sum = 0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(p.at(i, j) >= -1e-9);
        sum += p.at(i, j);
      }
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  CounterRng rng(41, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const int m1 = 2 + static_cast<int>(rng.next_below(3));
    const int m2 = 2 + static_cast<int>(rng.next_below(3));
    auto start = oracles::random_interior_point(m1, m2, rng, 0.1);
    auto t = integrate(start, 0.01, 10000, 10000);
    CHECK(t.min_step_potential_delta >= -1e-9);
    CHECK(t.final_field_max_abs < 1e-4);
  }
}

TEST_CASE("lyapunov derivative: three routes agree") {
  auto uniform = measure_2x2(0.25, 0.25, 0.25, 0.25);
  auto f0 = lyapunov_derivative(uniform);
  CHECK(f0.pairwise == doctest::Approx(0.0));
  CHECK(f0.vertex == doctest::Approx(0.0));
  CHECK(f0.split == doctest::Approx(0.0));

  auto x = measure_2x2(0.5, 0.25, 0.0, 0.25);
  auto f = lyapunov_derivative(x);
  CHECK(f.pairwise == doctest::Approx(8.0 / 27.0).epsilon(1e-12));
  CHECK(f.vertex == doctest::Approx(8.0 / 27.0).epsilon(1e-12));
  CHECK(f.split == doctest::Approx(8.0 / 27.0).epsilon(1e-12));

  CounterRng rng(43, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m1 = 2 + static_cast<int>(rng.next_below(4));
    const int m2 = 2 + static_cast<int>(rng.next_below(4));
    auto p = oracles::random_interior_point(m1, m2, rng);
    auto forms = lyapunov_derivative(p);
    CHECK(std::abs(forms.pairwise - forms.vertex) <= 1e-10);
    CHECK(std::abs(forms.pairwise - forms.split) <= 1e-10);
    CHECK(std::abs(forms.vertex - forms.split) <= 1e-10);
  }

  // Zero entries are fine as long as every marginal stays positive.
  CHECK(lyapunov_derivative(lambda_not_gamma()).pairwise ==
        doctest::Approx(0.0));

  auto pooling = measure_2x2(0.5, 0.0, 0.5, 0.0);
  CHECK_THROWS_AS(lyapunov_derivative(pooling), std::domain_error);
}

TEST_CASE("finite differences recover the analytic derivative") {
  auto uniform = measure_2x2(0.25, 0.25, 0.25, 0.25);
  CHECK(finite_diff_gradient_check(uniform, 1e-5) < 1e-12);

  // Interior perturbation of the worked example.
  const double eps = 1e-3;
  std::vector<double> w = {0.5, 0.25, eps, 0.25};
  for (auto& v : w) v /= 1.0 + eps;
  auto x = OccupationMeasure::from_weights(2, 2, std::move(w));
  CHECK(finite_diff_gradient_check(x, 1e-5) < 1e-7);

  // Halving h shrinks the residual about fourfold (second order).
  CounterRng rng(47, 0);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 10; ++trial) {
    const int m1 = 2 + static_cast<int>(rng.next_below(3));
    const int m2 = 2 + static_cast<int>(rng.next_below(3));
    auto p = oracles::random_interior_point(m1, m2, rng, 0.5);
    const double r1 = finite_diff_gradient_check(p, 2e-4);
    const double r2 = finite_diff_gradient_check(p, 1e-4);
    if (r1 < 1e-12 || r2 < 1e-13) continue;  // too close to cancellation
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.5));
    ++checked;
  }
  CHECK(checked >= 5);

  CHECK_THROWS_AS(finite_diff_gradient_check(uniform, 0.1),
                  std::invalid_argument);
}

TEST_CASE("unequal component weights: zero dissipation, nonzero drift") {
  auto x = lambda_not_gamma();
  CHECK(dissipation(x) <= 1e-15);
  CHECK(vector_field(x).max_abs() == doctest::Approx(0.2).epsilon(1e-12));
}

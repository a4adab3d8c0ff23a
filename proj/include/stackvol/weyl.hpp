#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stackvol/errors.hpp"
#include "stackvol/quadrature.hpp"
#include "stackvol/su2.hpp"

namespace stackvol {

template <typename Scalar>
struct OrbitDensity {
  Scalar density{0};
  bool on_wall = false;
};

/// Squared product of the positive roots at t * generator, in coordinates
/// dual to the lattice generator. t must lie in the closed positive chamber.
template <typename Scalar>
OrbitDensity<Scalar> adjoint_orbit_density(Scalar t, const CartanData<Scalar>& cartan) {
  if (!(t >= 0)) throw ValidationError("chamber parameter must be nonnegative");
  const Scalar root = t * cartan.root_on_generator;
  return {root * root, root == 0};
}

/// Function of the chamber coordinate, negligible beyond `extent`.
template <typename Scalar>
struct TestFunction {
  std::string name;
  std::function<Scalar(Scalar)> phi;
  Scalar extent{1};
};

template <typename Scalar>
TestFunction<Scalar> gaussian_test_function(Scalar width, Scalar scale = 1) {
  return {"gaussian(width=" + std::to_string(width) + ")",
          [width, scale](Scalar t) { return scale * std::exp(-t * t / (2 * width * width)); }, 5 * width};
}

template <typename Scalar>
std::vector<TestFunction<Scalar>> shipped_test_functions() {
  return {gaussian_test_function<Scalar>(Scalar(0.1)), gaussian_test_function<Scalar>(Scalar(0.05))};
}

template <typename Scalar>
struct WeylCheckReport {
  Scalar lhs{0};
  Scalar lhs_error{0};  ///< Monte Carlo standard error
  Scalar rhs{0};
  Scalar rhs_error{0};
  Scalar relative_error{0};
  bool converged = false;  ///< relative standard error <= tol / 3
  bool passed = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Compares the Lie-algebra integral of phi(chamber coordinate), with dX
/// scaled to agree at 0 with the probability Haar measure, against the
/// chamber integral of adjoint_orbit_density * phi.
template <typename Scalar>
WeylCheckReport<Scalar> weyl_integration_check(const TestFunction<Scalar>& tf, std::size_t samples,
                                               std::uint64_t seed, Scalar tol) {
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  const CartanData<Scalar> cartan = su2_cartan<Scalar>();
  WeylCheckReport<Scalar> report;
  report.samples = samples;
  report.seed = seed;

  const Scalar reach = tf.extent * cartan.generator_radius;
  const Box<Scalar> box = make_box<Scalar>({{-reach, reach}, {-reach, reach}, {-reach, reach}});
  auto lie_integrand = [&](const Point<Scalar>& x) {
    return tf.phi(chamber_parameter<Scalar>(Vector3<Scalar>(x(0), x(1), x(2)), cartan));
  };
  const auto lhs = integrate_mc(lie_integrand, box, samples, seed);
  report.lhs = lhs.value / cartan.haar_volume;
  report.lhs_error = lhs.error_estimate / cartan.haar_volume;

  auto chamber_integrand = [&](Scalar t) { return adjoint_orbit_density<Scalar>(t, cartan).density * tf.phi(t); };
  const auto rhs = integrate_1d<Scalar>(chamber_integrand, Scalar(0), tf.extent, Scalar(1e-12));
  report.rhs = rhs.value;
  report.rhs_error = rhs.error_estimate;

  const Scalar scale = std::max(std::abs(report.rhs), std::abs(report.lhs));
  report.relative_error = scale > 0 ? std::abs(report.lhs - report.rhs) / std::abs(report.rhs) : Scalar(0);
  report.converged = report.lhs != 0 ? report.lhs_error / std::abs(report.lhs) <= tol / 3 : report.lhs_error == 0;
  report.passed = report.converged && (scale == 0 || report.relative_error < tol);
  return report;
}

}  // namespace stackvol

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <functional>
#include <optional>
#include <sstream>

#include "stackvol/errors.hpp"
#include "stackvol/rational.hpp"

namespace stackvol {

/// lambda = c * (Liouville)^2 on a symplectic manifold of dimension 2m,
/// presented modulo a finite group K of order k_order.
struct SymplecticModel {
  Rational c{1};
  unsigned k_order = 1;
  unsigned dimension = 2;
};

inline Rational symplectic_bk_volume(const SymplecticModel& sm) {
  if (sm.k_order < 1) throw ValidationError("#K must be at least 1");
  if (sm.dimension % 2 != 0) throw ValidationError("symplectic dimension must be even");
  Rational out = sm.c / Rational(sm.k_order);
  out.canonicalize();
  return out;
}

/// A one-parameter family of area forms on a sphere: leaf area V(t) and
/// lambda = f(t) (omega_t ^ dt)^2.
template <typename Scalar = double>
struct PoissonFamilyModel {
  std::function<Scalar(Scalar)> area;              ///< V
  std::function<Scalar(Scalar)> coefficient;       ///< f
  std::optional<std::function<Scalar(Scalar)>> area_derivative;  ///< V', when known in closed form
  Scalar t_min{0};
  Scalar t_max{1};
};

inline constexpr double kDerivativeStep = 1e-5;
inline constexpr double kCriticalThreshold = 1e-8;

/// V'(t): closed form when supplied, otherwise central differences with one
/// Richardson step as fallback when the plain estimate is tiny. Throws
/// CriticalPointError when |V'| stays below the threshold.
template <typename Scalar>
Scalar area_derivative(const PoissonFamilyModel<Scalar>& pm, Scalar t) {
  if (!(t > pm.t_min && t < pm.t_max)) {
    std::ostringstream msg;
    msg << "t = " << t << " is not interior to (" << pm.t_min << ", " << pm.t_max << ")";
    throw ValidationError(msg.str());
  }
  auto central = [&](Scalar h) { return (pm.area(t + h) - pm.area(t - h)) / (2 * h); };
  Scalar d;
  if (pm.area_derivative) {
    d = (*pm.area_derivative)(t);
  } else {
    const Scalar h = std::min<Scalar>(Scalar(kDerivativeStep), (std::min(t - pm.t_min, pm.t_max - t)) / 2);
    d = central(h);
    if (std::abs(d) < kCriticalThreshold) d = (4 * central(h / 2) - d) / 3;
  }
  if (!(std::abs(d) >= kCriticalThreshold)) {
    std::ostringstream msg;
    msg << "leaf area has a critical point near t = " << t << " (|V'| = " << std::abs(d) << ")";
    throw CriticalPointError(msg.str());
  }
  return d;
}

/// Density f / V' of the measure on the stack.
template <typename Scalar>
Scalar poisson_stack_density(const PoissonFamilyModel<Scalar>& pm, Scalar t) {
  return pm.coefficient(t) / area_derivative(pm, t);
}

/// V'(t), the density of dV on the leaf space.
template <typename Scalar>
Scalar natural_leaf_measure(const PoissonFamilyModel<Scalar>& pm, Scalar t) {
  return area_derivative(pm, t);
}

/// Natural leaf measure times the leaf area form omega_t = (V(t)/V(t_ref)) omega_ref,
/// as a density against omega_ref ^ dt.
template <typename Scalar>
Scalar leaf_product_density(const PoissonFamilyModel<Scalar>& pm, Scalar t, Scalar t_ref = 1) {
  const Scalar reference = pm.area(t_ref);
  if (reference == 0) throw ValidationError("reference leaf has zero area");
  return natural_leaf_measure(pm, t) * pm.area(t) / reference;
}

/// Spheres of radius t in su(2)* with area 4 pi t, lambda = (dV ^ omega_t)^2.
template <typename Scalar = double>
PoissonFamilyModel<Scalar> su2_dual_model(Scalar t_max = 100) {
  const Scalar four_pi = 4 * static_cast<Scalar>(std::numbers::pi);
  PoissonFamilyModel<Scalar> pm;
  pm.area = [four_pi](Scalar t) { return four_pi * t; };
  pm.coefficient = [four_pi](Scalar) { return four_pi * four_pi; };
  pm.t_min = 0;
  pm.t_max = t_max;
  return pm;
}

}  // namespace stackvol

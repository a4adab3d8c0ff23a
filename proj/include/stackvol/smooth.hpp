#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "stackvol/errors.hpp"
#include "stackvol/finite_group.hpp"
#include "stackvol/quadrature.hpp"
#include "stackvol/random.hpp"
#include "stackvol/su2.hpp"

namespace stackvol {

enum class GroupKind { finite, circle, torus, su2, o2 };

inline const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::finite: return "finite";
    case GroupKind::circle: return "circle";
    case GroupKind::torus: return "torus";
    case GroupKind::su2: return "SU(2)";
    case GroupKind::o2: return "O(2)";
  }
  return "?";
}

/// Compact group with a Haar measure fixed by its value on the chosen
/// Lie-algebra basis (per-element weight for finite kinds). Every kind here
/// is unimodular, so the modular function is 1.
///
/// Group elements are passed around as parameter vectors:
///   circle: (theta), torus: (theta_1..theta_n), O(2): (theta, component)
///   with component 1 acting as (x, y) -> (x, -y) before the rotation,
///   finite: (index).
template <typename Scalar = double>
struct GroupModel {
  GroupKind kind = GroupKind::circle;
  Scalar haar_scale{1};
  Index order = 1;  ///< finite kinds
  int rank = 1;     ///< torus

  static GroupModel finite(Index order, Scalar weight = 1) { return {GroupKind::finite, weight, order, 0}; }
  static GroupModel circle(Scalar scale = 1) { return {GroupKind::circle, scale, 1, 1}; }
  static GroupModel torus(int n, Scalar scale = 1) { return {GroupKind::torus, scale, 1, n}; }
  static GroupModel o2(Scalar scale = 1) { return {GroupKind::o2, scale, 1, 1}; }
  static GroupModel su2(Scalar scale = 1) { return {GroupKind::su2, scale, 1, 3}; }

  Scalar modular(const Point<Scalar>&) const { return 1; }
};

template <typename Scalar>
void check_group(const GroupModel<Scalar>& gm) {
  if (!(gm.haar_scale > 0)) throw ValidationError("Haar scale must be positive");
  if (gm.kind == GroupKind::finite && gm.order < 1) throw ValidationError("finite group order must be positive");
  if (gm.kind == GroupKind::torus && gm.rank < 1) throw ValidationError("torus rank must be positive");
}

template <typename Scalar>
Scalar group_volume(const GroupModel<Scalar>& gm) {
  check_group(gm);
  const Scalar two_pi = 2 * static_cast<Scalar>(EIGEN_PI);
  switch (gm.kind) {
    case GroupKind::finite: return static_cast<Scalar>(gm.order) * gm.haar_scale;
    case GroupKind::circle: return two_pi * gm.haar_scale;
    case GroupKind::o2: return 2 * two_pi * gm.haar_scale;
    case GroupKind::torus: return std::pow(two_pi, gm.rank) * gm.haar_scale;
    case GroupKind::su2: return su2_cartan<Scalar>().haar_volume * gm.haar_scale;
  }
  return 0;
}

/// Haar integral of f over the group. SU(2) is only used through the Weyl
/// check and has no fiber integrals here.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_over_group(const GroupModel<Scalar>& gm, F&& f, Scalar tol) {
  check_group(gm);
  const Scalar two_pi = 2 * static_cast<Scalar>(EIGEN_PI);
  const Scalar s = gm.haar_scale;
  QuadratureResult<Scalar> out;
  switch (gm.kind) {
    case GroupKind::finite: {
      Point<Scalar> h(1);
      for (Index k = 0; k < gm.order; ++k) {
        h(0) = static_cast<Scalar>(k);
        out.value += s * static_cast<Scalar>(f(h));
      }
      out.evaluations = gm.order;
      return out;
    }
    case GroupKind::circle: {
      auto g = [&](Scalar theta) {
        Point<Scalar> h(1);
        h(0) = theta;
        return static_cast<Scalar>(f(h));
      };
      out = integrate_1d<Scalar>(g, Scalar(0), two_pi, tol / s);
      break;
    }
    case GroupKind::o2: {
      for (int c = 0; c < 2; ++c) {
        auto g = [&](Scalar theta) {
          Point<Scalar> h(2);
          h << theta, static_cast<Scalar>(c);
          return static_cast<Scalar>(f(h));
        };
        const auto part = integrate_1d<Scalar>(g, Scalar(0), two_pi, tol / (2 * s));
        out.value += part.value;
        out.error_estimate += part.error_estimate;
        out.evaluations += part.evaluations;
      }
      break;
    }
    case GroupKind::torus: {
      if (gm.rank > 2) throw ValidationError("fiber integrals over tori of rank > 2 are not supported");
      Box<Scalar> box{Point<Scalar>::Zero(gm.rank), Point<Scalar>::Constant(gm.rank, two_pi)};
      auto g = [&](const Point<Scalar>& h) { return static_cast<Scalar>(f(h)); };
      out = integrate_box(g, box, tol / s);
      break;
    }
    case GroupKind::su2:
      throw ValidationError("fiber integrals over SU(2) are not supported");
  }
  out.value *= s;
  out.error_estimate *= s;
  return out;
}

template <typename Scalar>
Point<Scalar> random_group_element(const GroupModel<Scalar>& gm, Engine& rng) {
  const Scalar two_pi = 2 * static_cast<Scalar>(EIGEN_PI);
  switch (gm.kind) {
    case GroupKind::finite: {
      Point<Scalar> h(1);
      h(0) = static_cast<Scalar>(uniform_below(rng, gm.order));
      return h;
    }
    case GroupKind::circle: {
      Point<Scalar> h(1);
      h(0) = two_pi * static_cast<Scalar>(uniform_unit(rng));
      return h;
    }
    case GroupKind::o2: {
      Point<Scalar> h(2);
      h(0) = two_pi * static_cast<Scalar>(uniform_unit(rng));
      h(1) = static_cast<Scalar>(uniform_below(rng, 2));
      return h;
    }
    case GroupKind::torus: {
      Point<Scalar> h(gm.rank);
      for (int k = 0; k < gm.rank; ++k) h(k) = two_pi * static_cast<Scalar>(uniform_unit(rng));
      return h;
    }
    case GroupKind::su2: break;
  }
  throw ValidationError("sampling SU(2) elements is not supported");
}

// ---------------------------------------------------------------------------
// Domains

template <typename Scalar>
struct Annulus {
  Scalar inner{0};
  Scalar outer{1};
};

/// Points 0..count-1 with counting measure.
struct Discrete {
  Index count = 0;
};

/// The whole plane; integrals are computed by exhaustion over disks.
struct WholePlane {};

template <typename Scalar>
using Domain = std::variant<Box<Scalar>, Annulus<Scalar>, Discrete, WholePlane>;

template <typename Scalar>
Eigen::Index domain_dimension(const Domain<Scalar>& d) {
  if (const auto* box = std::get_if<Box<Scalar>>(&d)) return box->dimension();
  if (std::holds_alternative<Discrete>(d)) return 1;
  return 2;
}

template <typename Scalar>
Point<Scalar> sample_domain(const Domain<Scalar>& d, Engine& rng) {
  const Scalar two_pi = 2 * static_cast<Scalar>(EIGEN_PI);
  auto unit = [&rng] { return static_cast<Scalar>(uniform_unit(rng)); };
  if (const auto* box = std::get_if<Box<Scalar>>(&d)) {
    Point<Scalar> x(box->dimension());
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = box->lower(k) + (box->upper(k) - box->lower(k)) * unit();
    return x;
  }
  if (const auto* ring = std::get_if<Annulus<Scalar>>(&d)) {
    const Scalar r = std::sqrt(ring->inner * ring->inner + (ring->outer * ring->outer - ring->inner * ring->inner) * unit());
    const Scalar theta = two_pi * unit();
    Point<Scalar> x(2);
    x << r * std::cos(theta), r * std::sin(theta);
    return x;
  }
  if (const auto* pts = std::get_if<Discrete>(&d)) {
    Point<Scalar> x(1);
    x(0) = static_cast<Scalar>(uniform_below(rng, pts->count));
    return x;
  }
  Point<Scalar> x(2);
  x << 20 * unit() - 10, 20 * unit() - 10;
  return x;
}

/// Integral of f against the domain's reference measure (Lebesgue, or
/// counting for Discrete). WholePlane integrals are exhausted over disks of
/// radius 2^k and reported as Divergence when they do not settle.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_domain(const Domain<Scalar>& d, F&& f, Scalar tol) {
  if (const auto* box = std::get_if<Box<Scalar>>(&d)) return integrate_box(f, *box, tol);
  if (const auto* ring = std::get_if<Annulus<Scalar>>(&d)) {
    if (!(ring->inner >= 0 && ring->outer >= ring->inner)) throw ValidationError("annulus radii must satisfy 0 <= inner <= outer");
    return integrate_annulus(f, ring->inner, ring->outer, tol);
  }
  if (const auto* pts = std::get_if<Discrete>(&d)) {
    QuadratureResult<Scalar> out;
    Point<Scalar> x(1);
    for (Index k = 0; k < pts->count; ++k) {
      x(0) = static_cast<Scalar>(k);
      out.value += static_cast<Scalar>(f(x));
    }
    out.evaluations = pts->count;
    return out;
  }
  constexpr int kRings = 24;
  QuadratureResult<Scalar> out;
  Scalar inner = 0;
  int quiet = 0;
  for (int k = 0; k < kRings; ++k) {
    const Scalar outer = std::ldexp(Scalar(1), k);
    const auto ring = integrate_annulus(f, inner, outer, tol / (2 * kRings));
    out.value += ring.value;
    out.error_estimate += ring.error_estimate;
    out.evaluations += ring.evaluations;
    inner = outer;
    quiet = std::abs(ring.value) <= tol / (2 * kRings) ? quiet + 1 : 0;
    if (quiet == 3) return out;
  }
  std::ostringstream msg;
  msg << "integral over the plane does not settle: partial value " << out.value << " at radius " << inner;
  throw Divergence(msg.str());
}

// ---------------------------------------------------------------------------
// Action models

enum class DensityMode { unsigned_density, signed_form };

/// Analytic description of the orbit space of a model.
template <typename Scalar>
struct OrbitChart {
  Scalar t_min{0};
  Scalar t_max{1};
  std::function<Scalar(const Point<Scalar>&)> projection;
  std::function<Scalar(Scalar)> alpha;          ///< orbit-space density
  std::function<Scalar(Scalar)> beta;           ///< isotropy volume, positive
  std::function<bool(Scalar)> is_singular;      ///< declared singular set
  std::function<Domain<Scalar>(Scalar, Scalar)> saturation;  ///< preimage of [t0, t1]
};

template <typename Scalar = double>
struct ActionModel {
  std::string name;
  GroupModel<Scalar> group;
  Domain<Scalar> domain;
  std::function<Point<Scalar>(const Point<Scalar>&, const Point<Scalar>&)> action;  ///< (h, x) -> h.x
  std::function<Scalar(const Point<Scalar>&)> b_density;
  std::function<Scalar(const Point<Scalar>&)> a_density;
  std::optional<OrbitChart<Scalar>> orbit_chart;
  DensityMode mode = DensityMode::unsigned_density;
  bool orientable = true;
};

/// b as an unsigned density; signed forms are accepted on orientable models.
template <typename Scalar>
Scalar density_b(const ActionModel<Scalar>& am, const Point<Scalar>& x) {
  if (am.mode == DensityMode::signed_form) {
    if (!am.orientable) throw ValidationError("signed forms need an orientable model: " + am.name);
    return std::abs(am.b_density(x));
  }
  return am.b_density(x);
}

/// Haar integral of a(h.y) over the group.
template <typename Scalar>
QuadratureResult<Scalar> fiber_integral(const ActionModel<Scalar>& am, const Point<Scalar>& y, Scalar tol = 1e-10) {
  auto f = [&](const Point<Scalar>& h) { return am.a_density(am.action(h, y)); };
  return integrate_over_group(am.group, f, tol);
}

namespace detail {

template <typename Scalar>
std::string describe(const Point<Scalar>& x) {
  std::ostringstream out;
  out << '(';
  for (Eigen::Index k = 0; k < x.size(); ++k) out << (k ? ", " : "") << x(k);
  out << ')';
  return out.str();
}

}  // namespace detail

/// Integral over the domain of b / (fiber integral of a). The inner
/// integrals run at a tighter tolerance and their relative error is added
/// to the reported estimate.
template <typename Scalar>
QuadratureResult<Scalar> volume_def1(const ActionModel<Scalar>& am, Scalar tol = 1e-6) {
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  Scalar worst_inner = 0;
  std::size_t inner_evaluations = 0;
  auto integrand = [&](const Point<Scalar>& y) {
    const Scalar b = density_b(am, y);
    if (b == 0) return Scalar(0);
    const auto fiber = fiber_integral(am, y, Scalar(1e-10));
    inner_evaluations += fiber.evaluations;
    if (fiber.value == 0) throw DegenerateWeightError("fiber integral vanishes at " + detail::describe(y));
    worst_inner = std::max(worst_inner, fiber.error_estimate / std::abs(fiber.value));
    return b / fiber.value;
  };
  auto out = integrate_domain(am.domain, integrand, tol);
  out.error_estimate += worst_inner * std::abs(out.value);
  out.evaluations += inner_evaluations;
  if (out.error_estimate > tol) {
    throw NonConvergence("volume error estimate exceeds the tolerance", static_cast<double>(out.value),
                         static_cast<double>(out.error_estimate), out.evaluations);
  }
  return out;
}

/// vol_b(X) / (a * vol(H)) for a model whose a is constant.
template <typename Scalar>
QuadratureResult<Scalar> homogeneous_volume(const ActionModel<Scalar>& am, Scalar tol = 1e-6,
                                            std::uint64_t seed = 94720, int spot_checks = 64) {
  Engine rng(seed);
  const Point<Scalar> reference = sample_domain(am.domain, rng);
  const Scalar a0 = am.a_density(reference);
  if (!(a0 > 0)) throw DegenerateWeightError("a must be positive");
  for (int k = 0; k < spot_checks; ++k) {
    const Point<Scalar> x = sample_domain(am.domain, rng);
    if (std::abs(am.a_density(x) - a0) > 1e-12 * std::abs(a0)) {
      throw ValidationError("a is not constant: differs at " + detail::describe(x));
    }
  }
  const Scalar denominator = a0 * group_volume(am.group);
  auto b = [&](const Point<Scalar>& x) { return density_b(am, x); };
  auto out = integrate_domain(am.domain, b, tol * denominator);
  out.value /= denominator;
  out.error_estimate /= denominator;
  return out;
}

template <typename Scalar>
struct InvarianceReport {
  bool passed = true;
  Scalar max_violation{0};
  Point<Scalar> witness_group;
  Point<Scalar> witness_point;
  std::size_t samples = 0;
};

/// |det D(h_X)| by central differences; 1 on discrete domains.
template <typename Scalar>
Scalar action_jacobian(const ActionModel<Scalar>& am, const Point<Scalar>& h, const Point<Scalar>& x) {
  if (std::holds_alternative<Discrete>(am.domain)) return 1;
  const Eigen::Index d = x.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> jac(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Scalar step = Scalar(1e-6) * std::max(Scalar(1), std::abs(x(k)));
    Point<Scalar> plus = x, minus = x;
    plus(k) += step;
    minus(k) -= step;
    jac.col(k) = (am.action(h, plus) - am.action(h, minus)) / (2 * step);
  }
  return std::abs(jac.determinant());
}

/// Samples (h, x) and checks b(h.x) |det D h_X(x)| = mu(h) b(x).
template <typename Scalar>
InvarianceReport<Scalar> check_invariance(const ActionModel<Scalar>& am, std::size_t samples, Scalar tol,
                                          std::uint64_t seed = 94720) {
  Engine rng(seed);
  InvarianceReport<Scalar> report;
  report.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const Point<Scalar> h = random_group_element(am.group, rng);
    const Point<Scalar> x = sample_domain(am.domain, rng);
    const Scalar lhs = density_b(am, am.action(h, x)) * action_jacobian(am, h, x);
    const Scalar rhs = am.group.modular(h) * density_b(am, x);
    const Scalar violation = std::abs(lhs - rhs) / std::max(Scalar(1), std::abs(rhs));
    if (violation > report.max_violation || k == 0) {
      report.max_violation = violation;
      report.witness_group = h;
      report.witness_point = x;
    }
  }
  report.passed = report.max_violation <= tol;
  return report;
}

template <typename Scalar>
const OrbitChart<Scalar>& require_chart(const ActionModel<Scalar>& am) {
  if (!am.orbit_chart) throw ValidationError("model has no orbit chart: " + am.name);
  return *am.orbit_chart;
}

/// alpha(t) / beta(t) on the strongly regular part.
template <typename Scalar>
Scalar pushforward_density(const ActionModel<Scalar>& am, Scalar t) {
  const auto& chart = require_chart(am);
  if (!(t >= chart.t_min && t <= chart.t_max)) {
    std::ostringstream msg;
    msg << "orbit parameter " << t << " outside [" << chart.t_min << ", " << chart.t_max << "]";
    throw ValidationError(msg.str());
  }
  if (chart.is_singular && chart.is_singular(t)) {
    std::ostringstream msg;
    msg << "orbit parameter " << t << " is in the singular set; densities exist on the strongly regular part only";
    throw SingularOrbitError(msg.str());
  }
  const Scalar beta = chart.beta(t);
  if (!(beta > 0)) throw DegenerateWeightError("isotropy volume must be positive");
  return chart.alpha(t) / beta;
}

template <typename Scalar>
struct ComparisonReport {
  QuadratureResult<Scalar> def1;
  QuadratureResult<Scalar> pushforward;
  Scalar difference{0};
  Scalar tolerance{0};
  bool passed = false;
};

/// volume_def1 over the saturation of [t0, t1] against the orbit-space
/// integral of pushforward_density; singular parameters contribute 0.
template <typename Scalar>
ComparisonReport<Scalar> def1_vs_pushforward(const ActionModel<Scalar>& am, Scalar t0, Scalar t1, Scalar tol = 1e-6) {
  const auto& chart = require_chart(am);
  if (!(t0 >= chart.t_min && t1 <= chart.t_max && t0 <= t1)) throw ValidationError("region outside the orbit chart");
  ActionModel<Scalar> restricted = am;
  restricted.domain = chart.saturation(t0, t1);
  ComparisonReport<Scalar> report;
  report.tolerance = tol;
  report.def1 = volume_def1(restricted, tol / 2);
  auto density = [&](Scalar t) {
    if (chart.is_singular && chart.is_singular(t)) return Scalar(0);
    return pushforward_density(am, t);
  };
  report.pushforward = integrate_1d<Scalar>(density, t0, t1, tol / 2);
  report.difference = std::abs(report.def1.value - report.pushforward.value);
  report.passed = report.difference <= tol;
  return report;
}

}  // namespace stackvol

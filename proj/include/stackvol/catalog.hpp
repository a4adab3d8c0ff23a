#pragma once

#include <cmath>
#include <string>

#include "stackvol/finite_group.hpp"
#include "stackvol/finite_groupoid.hpp"
#include "stackvol/smooth.hpp"

namespace stackvol {

/// Rotation by h(0); for O(2) component h(1) = 1 reflects y first.
template <typename Scalar>
Point<Scalar> rotate_plane(const Point<Scalar>& h, const Point<Scalar>& x) {
  const Scalar c = std::cos(h(0)), s = std::sin(h(0));
  const Scalar y = (h.size() > 1 && h(1) != 0) ? -x(1) : x(1);
  Point<Scalar> out(2);
  out << c * x(0) - s * y, s * x(0) + c * y;
  return out;
}

/// SO(2) or O(2) on the disk of radius R with b = Lebesgue and a = a0 times
/// the Haar form of scale `scale`. Orbits are circles |x| = t; the origin
/// is the declared singular set. Generic isotropy is trivial for SO(2) and
/// Z/2 (a reflection) for O(2).
template <typename Scalar = double>
ActionModel<Scalar> plane_model(bool with_reflection, Scalar radius, Scalar scale = 1, Scalar a0 = 1) {
  if (!(radius > 0)) throw ValidationError("radius must be positive");
  if (!(a0 > 0)) throw ValidationError("a must be positive");
  ActionModel<Scalar> am;
  am.name = with_reflection ? "plane-o2" : "plane-so2";
  am.group = with_reflection ? GroupModel<Scalar>::o2(scale) : GroupModel<Scalar>::circle(scale);
  am.domain = Annulus<Scalar>{Scalar(0), radius};
  am.action = rotate_plane<Scalar>;
  am.b_density = [](const Point<Scalar>&) { return Scalar(1); };
  am.a_density = [a0](const Point<Scalar>&) { return a0; };
  const Scalar isotropy = with_reflection ? 2 : 1;
  OrbitChart<Scalar> chart;
  chart.t_min = 0;
  chart.t_max = radius;
  chart.projection = [](const Point<Scalar>& x) { return x.norm(); };
  // b over the orbit circle divided by a-volume of H per isotropy element
  chart.alpha = [scale, a0](Scalar t) { return t / (scale * a0); };
  chart.beta = [isotropy](Scalar) { return isotropy; };
  chart.is_singular = [](Scalar t) { return t == 0; };
  chart.saturation = [](Scalar t0, Scalar t1) { return Domain<Scalar>(Annulus<Scalar>{t0, t1}); };
  am.orbit_chart = chart;
  return am;
}

/// The circle translating the first coordinate of the flat torus [0, 2pi)^2.
/// The action is free; orbits are labelled by the second coordinate.
template <typename Scalar = double>
ActionModel<Scalar> torus_free_model(Scalar scale = 1, Scalar a0 = 1) {
  const Scalar two_pi = 2 * static_cast<Scalar>(EIGEN_PI);
  ActionModel<Scalar> am;
  am.name = "torus-free";
  am.group = GroupModel<Scalar>::circle(scale);
  am.domain = make_box<Scalar>({{Scalar(0), two_pi}, {Scalar(0), two_pi}});
  am.action = [two_pi](const Point<Scalar>& h, const Point<Scalar>& x) {
    Point<Scalar> out = x;
    out(0) = std::fmod(x(0) + h(0), two_pi);
    if (out(0) < 0) out(0) += two_pi;
    return out;
  };
  am.b_density = [](const Point<Scalar>&) { return Scalar(1); };
  am.a_density = [a0](const Point<Scalar>&) { return a0; };
  OrbitChart<Scalar> chart;
  chart.t_min = 0;
  chart.t_max = two_pi;
  chart.projection = [](const Point<Scalar>& x) { return x(1); };
  chart.alpha = [scale, a0](Scalar) { return 1 / (scale * a0); };
  chart.beta = [](Scalar) { return Scalar(1); };
  chart.is_singular = [](Scalar) { return false; };
  chart.saturation = [two_pi](Scalar t0, Scalar t1) {
    return Domain<Scalar>(make_box<Scalar>({{Scalar(0), two_pi}, {t0, t1}}));
  };
  am.orbit_chart = chart;
  return am;
}

/// SO(2) acting on the whole plane with the given b, a = 1.
template <typename Scalar = double>
ActionModel<Scalar> whole_plane_model(std::function<Scalar(const Point<Scalar>&)> b) {
  ActionModel<Scalar> am;
  am.name = "plane-so2-unbounded";
  am.group = GroupModel<Scalar>::circle();
  am.domain = WholePlane{};
  am.action = rotate_plane<Scalar>;
  am.b_density = std::move(b);
  am.a_density = [](const Point<Scalar>&) { return Scalar(1); };
  return am;
}

/// A finite group acting on points 0..n-1 through an action table, with
/// per-point a and b taken from exact weights.
template <typename Scalar = double>
ActionModel<Scalar> finite_action_model(const FiniteGroup& group, const ActionTable& action, const WeightData& w) {
  if (const auto bad = action_violation(group, action); !bad.empty()) throw ValidationError("not a group action: " + bad);
  const Index points = action.empty() ? 0 : static_cast<Index>(action.front().size());
  if (w.a.size() != points || w.b.size() != points) throw ValidationError("weights do not match the point count");
  std::vector<Scalar> a(points), b(points);
  for (Index x = 0; x < points; ++x) {
    a[x] = static_cast<Scalar>(to_double(w.a[x]));
    b[x] = static_cast<Scalar>(to_double(w.b[x]));
  }
  ActionModel<Scalar> am;
  am.name = "finite:" + group.name();
  am.group = GroupModel<Scalar>::finite(static_cast<Index>(group.order()));
  am.domain = Discrete{points};
  am.action = [action](const Point<Scalar>& h, const Point<Scalar>& x) {
    Point<Scalar> out(1);
    out(0) = static_cast<Scalar>(action[static_cast<Index>(h(0))][static_cast<Index>(x(0))]);
    return out;
  };
  am.a_density = [a](const Point<Scalar>& x) { return a[static_cast<Index>(x(0))]; };
  am.b_density = [b](const Point<Scalar>& x) { return b[static_cast<Index>(x(0))]; };
  return am;
}

}  // namespace stackvol

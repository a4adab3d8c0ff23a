#pragma once

// Deliberately naive reimplementations used as test oracles. They scan the
// raw arrow list instead of the adjacency tables and share no code with the
// library beyond the accessors.

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "stackvol/finite_groupoid.hpp"

namespace oracle {

using stackvol::FiniteGroupoid;
using stackvol::Index;
using stackvol::Rational;
using stackvol::WeightData;

/// Sum over y of b(y) / (sum over arrows g with r(g) = y of a(l(g))).
inline Rational fiber_volume(const FiniteGroupoid& g, const WeightData& w) {
  Rational total = 0;
  for (Index y = 0; y < g.object_count(); ++y) {
    Rational inner = 0;
    for (const auto& arrow : g.arrows()) {
      if (arrow.r == y) inner += w.a[arrow.l];
    }
    total += w.b[y] / inner;
  }
  total.canonicalize();
  return total;
}

/// Sum over y of 1 / #r^-1(y): each orbit O contributes #O / (#O #isotropy).
inline Rational cardinality(const FiniteGroupoid& g) {
  Rational total = 0;
  for (Index y = 0; y < g.object_count(); ++y) {
    long count = 0;
    for (const auto& arrow : g.arrows()) count += arrow.r == y;
    total += Rational(1, count);
  }
  total.canonicalize();
  return total;
}

/// Orbit label per object by repeated relaxation over the arrow list.
inline std::vector<Index> orbit_labels(const FiniteGroupoid& g) {
  std::vector<Index> label(g.object_count());
  std::iota(label.begin(), label.end(), Index{0});
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& arrow : g.arrows()) {
      const Index m = std::min(label[arrow.l], label[arrow.r]);
      if (label[arrow.l] != m || label[arrow.r] != m) {
        label[arrow.l] = label[arrow.r] = m;
        changed = true;
      }
    }
  }
  return label;
}

/// Sum over orbits of lambda / #isotropy, reading lambda at the smallest object.
inline Rational orbit_volume(const FiniteGroupoid& g, const WeightData& w) {
  const auto label = orbit_labels(g);
  Rational total = 0;
  for (Index x = 0; x < g.object_count(); ++x) {
    if (label[x] != x) continue;
    long loops = 0;
    for (const auto& arrow : g.arrows()) loops += arrow.l == x && arrow.r == x;
    total += (w.b[x] / w.a[x]) / loops;
  }
  total.canonicalize();
  return total;
}

/// Exhaustive axiom check over all pairs and triples of arrows.
inline bool satisfies_axioms(const FiniteGroupoid& g) {
  const Index n = static_cast<Index>(g.arrow_count());
  for (Index x = 0; x < g.object_count(); ++x) {
    const Index e = g.identity(x);
    if (e == stackvol::kNone || g.arrow(e).l != x || g.arrow(e).r != x) return false;
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const bool composable = g.arrow(a).r == g.arrow(b).l;
      const auto ab = g.product(a, b);
      if (ab.has_value() != composable) return false;
      if (!ab) continue;
      if (g.arrow(*ab).l != g.arrow(a).l || g.arrow(*ab).r != g.arrow(b).r) return false;
      for (Index c = 0; c < n; ++c) {
        if (g.arrow(b).r != g.arrow(c).l) continue;
        if (g.product(*ab, c) != g.product(a, *g.product(b, c))) return false;
      }
    }
    const Index inv = g.inverse(a);
    if (inv == stackvol::kNone) return false;
    if (g.product(a, inv) != g.identity(g.arrow(a).l)) return false;
    if (g.product(inv, a) != g.identity(g.arrow(a).r)) return false;
    if (g.product(g.identity(g.arrow(a).l), a) != a || g.product(a, g.identity(g.arrow(a).r)) != a) return false;
  }
  return g.ill_typed_products().empty();
}

/// Partial sum of 1/n! in floating point.
inline double exp_partial_sum(unsigned cutoff) {
  double sum = 0, term = 1;
  for (unsigned n = 0; n <= cutoff; ++n) {
    if (n > 0) term /= n;
    sum += term;
  }
  return sum;
}

}  // namespace oracle

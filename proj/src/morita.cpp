#include "stackvol/morita.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stackvol/errors.hpp"

namespace stackvol {

Bibundle::Bibundle(std::vector<std::string> elements, std::vector<Index> left_anchor,
                   std::vector<Index> right_anchor)
    : elements_(std::move(elements)),
      left_anchor_(std::move(left_anchor)),
      right_anchor_(std::move(right_anchor)) {
  if (left_anchor_.size() != elements_.size() || right_anchor_.size() != elements_.size()) {
    throw InputError("bibundle anchors do not cover the element set");
  }
  for (Index b = 0; b < elements_.size(); ++b) {
    if (!lookup_.emplace(elements_[b], b).second) {
      throw InputError("duplicate bibundle element '" + elements_[b] + "'");
    }
  }
}

std::optional<Index> Bibundle::find_element(const std::string& id) const {
  auto it = lookup_.find(id);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

void Bibundle::set_left_action(Index g, Index b, Index result) { left_action_[key(g, b)] = result; }

void Bibundle::set_right_action(Index b, Index h, Index result) { right_action_[key(b, h)] = result; }

std::optional<Index> Bibundle::left_act(Index g, Index b) const {
  auto it = left_action_.find(key(g, b));
  if (it == left_action_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> Bibundle::right_act(Index b, Index h) const {
  auto it = right_action_.find(key(b, h));
  if (it == right_action_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::array<Index, 3>> sorted_entries(const std::unordered_map<std::uint64_t, Index>& table) {
  std::vector<std::array<Index, 3>> out;
  out.reserve(table.size());
  for (const auto& [k, v] : table) {
    out.push_back({static_cast<Index>(k >> 32), static_cast<Index>(k & 0xffffffffu), v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::array<Index, 3>> Bibundle::left_entries() const { return sorted_entries(left_action_); }

std::vector<std::array<Index, 3>> Bibundle::right_entries() const { return sorted_entries(right_action_); }

ValidationReport validate_bibundle(const FiniteGroupoid& left, const FiniteGroupoid& right,
                                   const Bibundle& bundle, std::size_t max_violations) {
  ValidationReport report;
  auto add = [&](std::string axiom, std::string witness) {
    if (report.violations.size() >= max_violations) {
      report.truncated = true;
      return;
    }
    report.violations.push_back({std::move(axiom), std::move(witness)});
  };
  const auto n = static_cast<Index>(bundle.size());
  auto name = [&](Index b) { return "'" + bundle.element_id(b) + "'"; };

  for (Index b = 0; b < n; ++b) {
    if (bundle.left_anchor(b) >= left.object_count() || bundle.right_anchor(b) >= right.object_count()) {
      add("anchor range", name(b) + " is anchored outside the object sets");
    }
  }
  if (!report.ok()) return report;

  std::vector<std::vector<Index>> over_left(left.object_count()), over_right(right.object_count());
  for (Index b = 0; b < n; ++b) {
    over_left[bundle.left_anchor(b)].push_back(b);
    over_right[bundle.right_anchor(b)].push_back(b);
  }

  // typing and anchor transport
  bool typed = true;
  for (const auto& [g, b, gb] : bundle.left_entries()) {
    if (g >= left.arrow_count() || b >= n || gb >= n || left.arrow(g).r != bundle.left_anchor(b)) {
      typed = false;
      add("left action typing", "entry for an arrow not ending at the left anchor of an element");
    } else if (bundle.left_anchor(gb) != left.arrow(g).l || bundle.right_anchor(gb) != bundle.right_anchor(b)) {
      typed = false;
      add("left action anchors", "'" + left.arrow(g).id + "' . " + name(b) + " has wrong anchors");
    }
  }
  for (const auto& [b, h, bh] : bundle.right_entries()) {
    if (h >= right.arrow_count() || b >= n || bh >= n || right.arrow(h).l != bundle.right_anchor(b)) {
      typed = false;
      add("right action typing", "entry for an arrow not starting at the right anchor of an element");
    } else if (bundle.right_anchor(bh) != right.arrow(h).r || bundle.left_anchor(bh) != bundle.left_anchor(b)) {
      typed = false;
      add("right action anchors", name(b) + " . '" + right.arrow(h).id + "' has wrong anchors");
    }
  }
  for (Index b = 0; b < n; ++b) {
    for (Index g : left.arrows_into(bundle.left_anchor(b))) {
      if (!bundle.left_act(g, b)) {
        typed = false;
        add("left action totality", "'" + left.arrow(g).id + "' . " + name(b) + " is undefined");
      }
    }
    for (Index h : right.arrows_from(bundle.right_anchor(b))) {
      if (!bundle.right_act(b, h)) {
        typed = false;
        add("right action totality", name(b) + " . '" + right.arrow(h).id + "' is undefined");
      }
    }
  }
  // principality: g -> g.b is a bijection onto the right-anchor fiber of b, and symmetrically
  for (Index y = 0; y < right.object_count(); ++y) {
    if (over_right[y].empty()) add("right anchor not surjective", "no element over '" + right.object_id(y) + "'");
  }
  for (Index x = 0; x < left.object_count(); ++x) {
    if (over_left[x].empty()) add("left anchor not surjective", "no element over '" + left.object_id(x) + "'");
  }
  if (!typed) return report;

  for (Index b = 0; b < n; ++b) {
    const Index e_left = left.identity(bundle.left_anchor(b));
    const Index e_right = right.identity(bundle.right_anchor(b));
    if (e_left == kNone || *bundle.left_act(e_left, b) != b) add("left action unit", name(b));
    if (e_right == kNone || *bundle.right_act(b, e_right) != b) add("right action unit", name(b));

    for (Index g2 : left.arrows_into(bundle.left_anchor(b))) {
      const Index g2b = *bundle.left_act(g2, b);
      for (Index g1 : left.arrows_into(left.arrow(g2).l)) {
        auto g1g2 = left.product(g1, g2);
        if (!g1g2 || *bundle.left_act(*g1g2, b) != *bundle.left_act(g1, g2b)) {
          add("left action associativity", "('" + left.arrow(g1).id + "','" + left.arrow(g2).id + "'," + name(b) + ")");
        }
      }
      for (Index h : right.arrows_from(bundle.right_anchor(b))) {
        if (*bundle.right_act(g2b, h) != *bundle.left_act(g2, *bundle.right_act(b, h))) {
          add("actions commute", "('" + left.arrow(g2).id + "'," + name(b) + ",'" + right.arrow(h).id + "')");
        }
      }
    }
    for (Index h1 : right.arrows_from(bundle.right_anchor(b))) {
      const Index bh1 = *bundle.right_act(b, h1);
      for (Index h2 : right.arrows_from(right.arrow(h1).r)) {
        auto h1h2 = right.product(h1, h2);
        if (!h1h2 || *bundle.right_act(b, *h1h2) != *bundle.right_act(bh1, h2)) {
          add("right action associativity", "(" + name(b) + ",'" + right.arrow(h1).id + "','" + right.arrow(h2).id + "')");
        }
      }
    }
  }

  for (Index b = 0; b < n; ++b) {
    std::set<Index> images;
    for (Index g : left.arrows_into(bundle.left_anchor(b))) {
      if (!images.insert(*bundle.left_act(g, b)).second) {
        add("left action not free", "two arrows send " + name(b) + " to " + name(*bundle.left_act(g, b)));
      }
    }
    if (images.size() < over_right[bundle.right_anchor(b)].size()) {
      add("left action not transitive", "orbit of " + name(b) + " misses part of its right-anchor fiber");
    }
    images.clear();
    for (Index h : right.arrows_from(bundle.right_anchor(b))) {
      if (!images.insert(*bundle.right_act(b, h)).second) {
        add("right action not free", "two arrows send " + name(b) + " to " + name(*bundle.right_act(b, h)));
      }
    }
    if (images.size() < over_left[bundle.left_anchor(b)].size()) {
      add("right action not transitive", "orbit of " + name(b) + " misses part of its left-anchor fiber");
    }
  }
  return report;
}

namespace {

void require_valid_bibundle(const FiniteGroupoid& left, const FiniteGroupoid& right, const Bibundle& bundle) {
  const auto report = validate_bibundle(left, right, bundle, 1);
  if (!report.ok()) {
    throw ValidationError("invalid bibundle: " + report.violations.front().axiom + ": " +
                          report.violations.front().witness);
  }
}

}  // namespace

FiniteGroupoid linking_groupoid(const FiniteGroupoid& left, const FiniteGroupoid& right,
                                const Bibundle& bundle) {
  require_valid_bibundle(left, right, bundle);
  const auto n1 = static_cast<Index>(left.object_count());
  const auto a1 = static_cast<Index>(left.arrow_count());
  const auto a2 = static_cast<Index>(right.arrow_count());
  const auto nb = static_cast<Index>(bundle.size());
  const Index bridge0 = a1 + a2, cobridge0 = a1 + a2 + nb;

  std::vector<std::string> objects;
  for (const auto& id : left.object_ids()) objects.push_back("left:" + id);
  for (const auto& id : right.object_ids()) objects.push_back("right:" + id);
  std::vector<Arrow> arrows;
  arrows.reserve(cobridge0 + nb);
  for (const auto& a : left.arrows()) arrows.push_back({"left:" + a.id, a.l, a.r});
  for (const auto& a : right.arrows()) arrows.push_back({"right:" + a.id, n1 + a.l, n1 + a.r});
  for (Index b = 0; b < nb; ++b) {
    arrows.push_back({"bridge:" + bundle.element_id(b), bundle.left_anchor(b), n1 + bundle.right_anchor(b)});
  }
  for (Index b = 0; b < nb; ++b) {
    arrows.push_back({"cobridge:" + bundle.element_id(b), n1 + bundle.right_anchor(b), bundle.left_anchor(b)});
  }
  FiniteGroupoid g(std::move(objects), std::move(arrows));

  // solve g.b2 = b1 and b1.h = b2 through the principal actions
  std::unordered_map<std::uint64_t, Index> left_solution, right_solution;
  auto key = [](Index x, Index y) { return (std::uint64_t{x} << 32) | y; };
  for (Index b = 0; b < nb; ++b) {
    for (Index a : left.arrows_into(bundle.left_anchor(b))) left_solution[key(b, *bundle.left_act(a, b))] = a;
    for (Index h : right.arrows_from(bundle.right_anchor(b))) right_solution[key(b, *bundle.right_act(b, h))] = h;
  }

  for (Index x = 0; x < n1; ++x) g.set_identity(x, left.identity(x));
  for (Index y = 0; y < right.object_count(); ++y) g.set_identity(n1 + y, a1 + right.identity(y));
  for (Index a = 0; a < a1; ++a) g.set_inverse(a, left.inverse(a));
  for (Index h = 0; h < a2; ++h) g.set_inverse(a1 + h, a1 + right.inverse(h));
  for (Index b = 0; b < nb; ++b) {
    g.set_inverse(bridge0 + b, cobridge0 + b);
    g.set_inverse(cobridge0 + b, bridge0 + b);
  }

  enum class Kind { Left, Right, Bridge, Cobridge };
  auto kind = [&](Index u) {
    if (u < a1) return Kind::Left;
    if (u < bridge0) return Kind::Right;
    if (u < cobridge0) return Kind::Bridge;
    return Kind::Cobridge;
  };
  for (Index u = 0; u < g.arrow_count(); ++u) {
    for (Index v : g.arrows_from(g.arrow(u).r)) {
      Index uv = kNone;
      switch (kind(u)) {
        case Kind::Left:
          uv = kind(v) == Kind::Left ? *left.product(u, v) : bridge0 + *bundle.left_act(u, v - bridge0);
          break;
        case Kind::Right:
          if (kind(v) == Kind::Right) {
            uv = a1 + *right.product(u - a1, v - a1);
          } else {  // h . cobridge(b) = cobridge(b . h^-1)
            uv = cobridge0 + *bundle.right_act(v - cobridge0, right.inverse(u - a1));
          }
          break;
        case Kind::Bridge:
          if (kind(v) == Kind::Right) {
            uv = bridge0 + *bundle.right_act(u - bridge0, v - a1);
          } else {  // bridge(b1) cobridge(b2) = the g with g.b2 = b1
            uv = left_solution.at(key(v - cobridge0, u - bridge0));
          }
          break;
        case Kind::Cobridge:
          if (kind(v) == Kind::Left) {  // cobridge(b) . g = cobridge(g^-1 . b)
            uv = cobridge0 + *bundle.left_act(left.inverse(v), u - cobridge0);
          } else {  // cobridge(b1) bridge(b2) = the h with b1.h = b2
            uv = a1 + right_solution.at(key(u - cobridge0, v - bridge0));
          }
          break;
      }
      g.set_product(u, v, uv);
    }
  }
  return g;
}

FiniteGroupoid restrict_full(const FiniteGroupoid& g, const std::vector<Index>& subset) {
  const auto dec = orbits(g);
  std::vector<Index> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<bool> hit(dec.orbits.size(), false);
  std::vector<Index> new_index(g.object_count(), kNone);
  std::vector<std::string> objects;
  for (Index x : sorted) {
    if (x >= g.object_count()) throw ValidationError("subset refers to an unknown object");
    hit[dec.orbit_of[x]] = true;
    new_index[x] = static_cast<Index>(objects.size());
    objects.push_back(g.object_id(x));
  }
  for (std::size_t k = 0; k < hit.size(); ++k) {
    if (!hit[k]) throw NotFullError(g.object_id(dec.orbits[k].representative));
  }

  std::vector<Index> new_arrow(g.arrow_count(), kNone);
  std::vector<Arrow> arrows;
  for (Index a = 0; a < g.arrow_count(); ++a) {
    const auto& arr = g.arrow(a);
    if (new_index[arr.l] != kNone && new_index[arr.r] != kNone) {
      new_arrow[a] = static_cast<Index>(arrows.size());
      arrows.push_back({arr.id, new_index[arr.l], new_index[arr.r]});
    }
  }
  FiniteGroupoid out(std::move(objects), std::move(arrows));
  auto map = [&](Index a) { return a == kNone ? kNone : new_arrow[a]; };
  for (Index x : sorted) {
    if (g.identity(x) != kNone) out.set_identity(new_index[x], map(g.identity(x)));
  }
  for (Index a = 0; a < g.arrow_count(); ++a) {
    if (new_arrow[a] == kNone) continue;
    if (map(g.inverse(a)) != kNone) out.set_inverse(new_arrow[a], map(g.inverse(a)));
    for (Index b : g.arrows_from(g.arrow(a).r)) {
      if (new_arrow[b] == kNone) continue;
      if (auto ab = g.product(a, b); ab && map(*ab) != kNone) out.set_product(new_arrow[a], new_arrow[b], map(*ab));
    }
  }
  return out;
}

FiniteGroupoid linking_side(const FiniteGroupoid& link, std::size_t left_objects, bool right_side) {
  if (left_objects > link.object_count()) throw ValidationError("left object count exceeds the linking groupoid");
  std::vector<Index> subset;
  const std::size_t begin = right_side ? left_objects : 0;
  const std::size_t end = right_side ? link.object_count() : left_objects;
  for (std::size_t x = begin; x < end; ++x) subset.push_back(static_cast<Index>(x));
  const std::string prefix = right_side ? "right:" : "left:";
  auto strip = [&prefix](const std::string& id) {
    return id.compare(0, prefix.size(), prefix) == 0 ? id.substr(prefix.size()) : id;
  };
  return relabel(restrict_full(link, subset), strip, strip);
}

Section extend_invariant_section(const FiniteGroupoid& g, const std::vector<Index>& subset,
                                 const Section& values) {
  if (values.size() != subset.size()) throw ValidationError("section values do not match the subset");
  const auto dec = orbits(g);
  std::vector<std::optional<Rational>> per_orbit(dec.orbits.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] >= g.object_count()) throw ValidationError("subset refers to an unknown object");
    auto& slot = per_orbit[dec.orbit_of[subset[k]]];
    if (slot && *slot != values[k]) {
      throw NonInvariantSectionError(g.object_id(dec.orbits[dec.orbit_of[subset[k]]].representative),
                                     "section takes values " + to_string(*slot) + " and " +
                                         to_string(values[k]) + " on one orbit");
    }
    slot = values[k];
  }
  Section out(g.object_count());
  for (std::size_t k = 0; k < dec.orbits.size(); ++k) {
    if (!per_orbit[k]) throw NotFullError(g.object_id(dec.orbits[k].representative));
    for (Index x : dec.orbits[k].objects) out[x] = *per_orbit[k];
  }
  return out;
}

namespace {

void require_invariant(const FiniteGroupoid& g, const Section& lambda) {
  if (lambda.size() != g.object_count()) throw ValidationError("section does not cover the object set");
  for (const auto& a : g.arrows()) {
    if (lambda[a.l] != lambda[a.r]) {
      throw NonInvariantSectionError(g.object_id(a.l), "arrow '" + a.id + "' joins values " +
                                                           to_string(lambda[a.l]) + " and " + to_string(lambda[a.r]));
    }
  }
}

}  // namespace

Section transfer_section(const FiniteGroupoid& left, const FiniteGroupoid& right,
                         const Bibundle& bundle, const Section& lambda_left) {
  require_invariant(left, lambda_left);
  const auto linking = linking_groupoid(left, right, bundle);
  std::vector<Index> left_side(left.object_count());
  std::iota(left_side.begin(), left_side.end(), Index{0});
  const auto extended = extend_invariant_section(linking, left_side, lambda_left);
  return Section(extended.begin() + static_cast<std::ptrdiff_t>(left.object_count()), extended.end());
}

MoritaReport morita_volume_check(const FiniteGroupoid& left, const FiniteGroupoid& right,
                                 const Bibundle& bundle, const WeightData& left_weights,
                                 const WeightData& right_weights) {
  if (right_weights.a.size() != right.object_count()) {
    throw ValidationError("right weight data does not cover the object set");
  }
  for (const auto& a : right_weights.a) {
    if (a == 0) throw ValidationError("right weight a vanishes somewhere");
  }
  for (const auto& a : left_weights.a) {
    if (a == 0) throw ValidationError("left weight a vanishes somewhere");
  }
  const auto expected = transfer_section(left, right, bundle, left_weights.lambda());
  const auto actual = right_weights.lambda();
  for (Index y = 0; y < right.object_count(); ++y) {
    if (expected[y] != actual[y]) {
      throw SectionMismatchError("sections not corresponding at '" + right.object_id(y) + "': transfer gives " +
                                 to_string(expected[y]) + ", weights give " + to_string(actual[y]));
    }
  }
  return {fiber_volume(left, left_weights), fiber_volume(right, right_weights)};
}

Bibundle identity_bibundle(const FiniteGroupoid& g) {
  std::vector<std::string> ids;
  std::vector<Index> la, ra;
  for (const auto& a : g.arrows()) {
    ids.push_back(a.id);
    la.push_back(a.l);
    ra.push_back(a.r);
  }
  Bibundle bundle(std::move(ids), std::move(la), std::move(ra));
  for (Index b = 0; b < g.arrow_count(); ++b) {
    for (Index a : g.arrows_into(g.arrow(b).l)) bundle.set_left_action(a, b, *g.product(a, b));
    for (Index h : g.arrows_from(g.arrow(b).r)) bundle.set_right_action(b, h, *g.product(b, h));
  }
  return bundle;
}

Restriction restriction_bibundle(const FiniteGroupoid& g, const std::vector<Index>& subset) {
  auto restricted = restrict_full(g, subset);
  std::vector<Index> element_of(g.arrow_count(), kNone);
  std::vector<std::string> ids;
  std::vector<Index> la, ra;
  for (Index a = 0; a < g.arrow_count(); ++a) {
    if (auto x = restricted.find_object(g.object_id(g.arrow(a).l))) {
      element_of[a] = static_cast<Index>(ids.size());
      ids.push_back(g.arrow(a).id);
      la.push_back(*x);
      ra.push_back(g.arrow(a).r);
    }
  }
  Bibundle bundle(std::move(ids), std::move(la), std::move(ra));
  for (Index a = 0; a < g.arrow_count(); ++a) {
    const Index b = element_of[a];
    if (b == kNone) continue;
    for (Index k : restricted.arrows_into(bundle.left_anchor(b))) {
      const Index original = *g.find_arrow(restricted.arrow(k).id);
      bundle.set_left_action(k, b, element_of[*g.product(original, a)]);
    }
    for (Index h : g.arrows_from(g.arrow(a).r)) bundle.set_right_action(b, h, element_of[*g.product(a, h)]);
  }
  return {std::move(restricted), std::move(bundle)};
}

Bibundle reverse_bibundle(const FiniteGroupoid& left, const FiniteGroupoid& right, const Bibundle& bundle) {
  std::vector<Index> la, ra;
  for (Index b = 0; b < bundle.size(); ++b) {
    la.push_back(bundle.right_anchor(b));
    ra.push_back(bundle.left_anchor(b));
  }
  Bibundle out(bundle.element_ids(), std::move(la), std::move(ra));
  for (Index b = 0; b < bundle.size(); ++b) {
    // h . bbar = (b . h^-1) bar ;  bbar . g = (g^-1 . b) bar
    for (Index h : right.arrows_into(bundle.right_anchor(b))) {
      if (auto r = bundle.right_act(b, right.inverse(h))) out.set_left_action(h, b, *r);
    }
    for (Index g : left.arrows_from(bundle.left_anchor(b))) {
      if (auto r = bundle.left_act(left.inverse(g), b)) out.set_right_action(b, g, *r);
    }
  }
  return out;
}

Bibundle compose_bibundles(const FiniteGroupoid& first, const FiniteGroupoid& middle,
                           const FiniteGroupoid& last, const Bibundle& b1, const Bibundle& b2) {
  require_valid_bibundle(first, middle, b1);
  require_valid_bibundle(middle, last, b2);
  const auto n1 = static_cast<Index>(b1.size()), n2 = static_cast<Index>(b2.size());
  auto pair_id = [&](Index x, Index y) { return std::size_t{x} * n2 + y; };
  std::vector<std::size_t> parent(std::size_t{n1} * n2);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto valid = [&](Index x, Index y) { return b1.right_anchor(x) == b2.left_anchor(y); };
  for (Index x = 0; x < n1; ++x) {
    for (Index y = 0; y < n2; ++y) {
      for (Index h : middle.arrows_from(b1.right_anchor(x))) {
        if (middle.arrow(h).r != b2.left_anchor(y)) continue;
        const std::size_t p = find(pair_id(*b1.right_act(x, h), y));
        const std::size_t q = find(pair_id(x, *b2.left_act(h, y)));
        if (p != q) parent[std::max(p, q)] = std::min(p, q);
      }
    }
  }
  std::vector<Index> class_of(parent.size(), kNone);
  std::vector<std::size_t> representative;
  std::vector<std::string> ids;
  std::vector<Index> la, ra;
  for (Index x = 0; x < n1; ++x) {
    for (Index y = 0; y < n2; ++y) {
      if (!valid(x, y)) continue;
      const std::size_t root = find(pair_id(x, y));
      if (class_of[root] == kNone) {
        class_of[root] = static_cast<Index>(ids.size());
        representative.push_back(pair_id(x, y));
        ids.push_back("[" + b1.element_id(x) + "*" + b2.element_id(y) + "]");
        la.push_back(b1.left_anchor(x));
        ra.push_back(b2.right_anchor(y));
      }
    }
  }
  Bibundle out(std::move(ids), std::move(la), std::move(ra));
  for (Index c = 0; c < out.size(); ++c) {
    const auto x = static_cast<Index>(representative[c] / n2);
    const auto y = static_cast<Index>(representative[c] % n2);
    for (Index g : first.arrows_into(b1.left_anchor(x))) {
      out.set_left_action(g, c, class_of[find(pair_id(*b1.left_act(g, x), y))]);
    }
    for (Index k : last.arrows_from(b2.right_anchor(y))) {
      out.set_right_action(c, k, class_of[find(pair_id(x, *b2.right_act(y, k)))]);
    }
  }
  return out;
}

Bibundle block_bibundle(const std::vector<Block>& left_blocks, const std::vector<Block>& right_blocks) {
  if (left_blocks.size() != right_blocks.size()) throw ValidationError("block lists differ in length");
  std::vector<std::string> ids;
  std::vector<Index> la, ra;
  struct Layout {
    Index left_obj, right_obj, left_arrow, right_arrow, element;
  };
  std::vector<Layout> layout;
  Layout cursor{0, 0, 0, 0, 0};
  for (std::size_t k = 0; k < left_blocks.size(); ++k) {
    const auto& lb = left_blocks[k];
    const auto& rb = right_blocks[k];
    if (lb.group.order() != rb.group.order() || lb.group.name() != rb.group.name()) {
      throw ValidationError("block " + std::to_string(k) + " uses different groups on the two sides");
    }
    layout.push_back(cursor);
    const Index m = lb.group.order();
    for (Index i = 0; i < lb.objects; ++i) {
      for (Index j = 0; j < rb.objects; ++j) {
        for (Index gamma = 0; gamma < m; ++gamma) {
          ids.push_back("e" + std::to_string(k) + ":" + std::to_string(i) + ">" + std::to_string(j) + ":" +
                        std::to_string(gamma));
          la.push_back(cursor.left_obj + i);
          ra.push_back(cursor.right_obj + j);
        }
      }
    }
    cursor.left_obj += lb.objects;
    cursor.right_obj += rb.objects;
    cursor.left_arrow += lb.objects * lb.objects * m;
    cursor.right_arrow += rb.objects * rb.objects * m;
    cursor.element += lb.objects * rb.objects * m;
  }
  Bibundle bundle(std::move(ids), std::move(la), std::move(ra));
  for (std::size_t k = 0; k < left_blocks.size(); ++k) {
    const auto& group = left_blocks[k].group;
    const Index n = left_blocks[k].objects, p = right_blocks[k].objects, m = group.order();
    const auto& at = layout[k];
    auto element = [&](Index i, Index j, Index gamma) { return at.element + (i * p + j) * m + gamma; };
    auto left_arrow = [&](Index i, Index j, Index gamma) { return at.left_arrow + (i * n + j) * m + gamma; };
    auto right_arrow = [&](Index i, Index j, Index gamma) { return at.right_arrow + (i * p + j) * m + gamma; };
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < p; ++j) {
        for (Index gamma = 0; gamma < m; ++gamma) {
          for (Index delta = 0; delta < m; ++delta) {
            for (Index i2 = 0; i2 < n; ++i2) {
              bundle.set_left_action(left_arrow(i2, i, delta), element(i, j, gamma),
                                     element(i2, j, group.multiply(delta, gamma)));
            }
            for (Index j2 = 0; j2 < p; ++j2) {
              bundle.set_right_action(element(i, j, gamma), right_arrow(j, j2, delta),
                                      element(i, j2, group.multiply(gamma, delta)));
            }
          }
        }
      }
    }
  }
  return bundle;
}

MoritaTriple random_morita_triple(std::uint64_t seed, const GeneratorBounds& bounds) {
  Engine rng(seed);
  const auto blocks = random_blocks(rng, bounds);
  const auto mode = uniform_below(rng, 3);
  if (mode == 0) {
    auto resized = blocks;
    const Index cap = std::max<Index>(1, bounds.max_objects / 4);
    for (auto& b : resized) b.objects = static_cast<Index>(uniform_between(rng, 1, cap));
    return {block_groupoid(blocks), block_groupoid(resized), block_bibundle(blocks, resized)};
  }
  auto g = block_groupoid(blocks);
  const auto dec = orbits(g);
  std::vector<Index> subset;
  for (const auto& o : dec.orbits) {
    const Index pick = o.objects[uniform_below(rng, o.objects.size())];
    for (Index x : o.objects) {
      if (x == pick || uniform_below(rng, 3) == 0) subset.push_back(x);
    }
  }
  auto restriction = restriction_bibundle(g, subset);
  if (mode == 1) return {std::move(restriction.restricted), std::move(g), std::move(restriction.bundle)};
  auto reversed = reverse_bibundle(restriction.restricted, g, restriction.bundle);
  return {std::move(g), std::move(restriction.restricted), std::move(reversed)};
}

}  // namespace stackvol

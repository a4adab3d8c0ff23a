#include "stackvol/finite_groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stackvol/errors.hpp"

namespace stackvol {

namespace {

void build_csr(const std::vector<Arrow>& arrows, std::size_t objects, bool by_left,
               std::vector<std::size_t>& offset, std::vector<Index>& list) {
  offset.assign(objects + 1, 0);
  for (const auto& a : arrows) ++offset[(by_left ? a.l : a.r) + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  list.assign(arrows.size(), kNone);
  std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
  for (Index g = 0; g < arrows.size(); ++g) {
    const Index key = by_left ? arrows[g].l : arrows[g].r;
    list[fill[key]++] = g;
  }
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows)
    : objects_(std::move(objects)), arrows_(std::move(arrows)) {
  for (Index x = 0; x < objects_.size(); ++x) {
    if (!object_lookup_.emplace(objects_[x], x).second) {
      throw InputError("duplicate object id '" + objects_[x] + "'");
    }
  }
  for (Index g = 0; g < arrows_.size(); ++g) {
    const auto& a = arrows_[g];
    if (!arrow_lookup_.emplace(a.id, g).second) throw InputError("duplicate arrow id '" + a.id + "'");
    if (a.l >= objects_.size() || a.r >= objects_.size()) {
      throw InputError("arrow '" + a.id + "' has an anchor outside the object set");
    }
  }
  identity_.assign(objects_.size(), kNone);
  inverse_.assign(arrows_.size(), kNone);
  build_csr(arrows_, objects_.size(), true, from_offset_, from_list_);
  build_csr(arrows_, objects_.size(), false, into_offset_, into_list_);

  position_in_from_.assign(arrows_.size(), kNone);
  for (Index x = 0; x < objects_.size(); ++x) {
    for (std::size_t k = from_offset_[x]; k < from_offset_[x + 1]; ++k) {
      position_in_from_[from_list_[k]] = static_cast<Index>(k - from_offset_[x]);
    }
  }
  row_offset_.assign(arrows_.size() + 1, 0);
  for (Index g = 0; g < arrows_.size(); ++g) {
    const Index y = arrows_[g].r;
    row_offset_[g + 1] = row_offset_[g] + (from_offset_[y + 1] - from_offset_[y]);
  }
  products_.assign(row_offset_.back(), kNone);
}

std::optional<Index> FiniteGroupoid::find_object(std::string_view id) const {
  auto it = object_lookup_.find(std::string(id));
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> FiniteGroupoid::find_arrow(std::string_view id) const {
  auto it = arrow_lookup_.find(std::string(id));
  if (it == arrow_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> FiniteGroupoid::product(Index g, Index h) const {
  if (arrows_[g].r != arrows_[h].l) return std::nullopt;
  const Index gh = products_[row_offset_[g] + position_in_from_[h]];
  if (gh == kNone) return std::nullopt;
  return gh;
}

void FiniteGroupoid::set_identity(Index x, Index g) { identity_.at(x) = g; }

void FiniteGroupoid::set_inverse(Index g, Index g_inv) { inverse_.at(g) = g_inv; }

void FiniteGroupoid::set_product(Index g, Index h, Index gh) {
  if (g >= arrows_.size() || h >= arrows_.size() || gh >= arrows_.size()) {
    throw InputError("product entry refers to an unknown arrow");
  }
  if (arrows_[g].r != arrows_[h].l) {
    ill_typed_.push_back({g, h, gh});
    return;
  }
  products_[row_offset_[g] + position_in_from_[h]] = gh;
}

std::span<const Index> FiniteGroupoid::arrows_from(Index x) const {
  return {from_list_.data() + from_offset_[x], from_offset_[x + 1] - from_offset_[x]};
}

std::span<const Index> FiniteGroupoid::arrows_into(Index y) const {
  return {into_list_.data() + into_offset_[y], into_offset_[y + 1] - into_offset_[y]};
}

FiniteGroupoid relabel(const FiniteGroupoid& g, const std::function<std::string(const std::string&)>& object_id,
                       const std::function<std::string(const std::string&)>& arrow_id) {
  std::vector<std::string> objects;
  objects.reserve(g.object_count());
  for (const auto& id : g.object_ids()) objects.push_back(object_id(id));
  std::vector<Arrow> arrows;
  arrows.reserve(g.arrow_count());
  for (const auto& a : g.arrows()) arrows.push_back({arrow_id(a.id), a.l, a.r});
  FiniteGroupoid out(std::move(objects), std::move(arrows));
  for (Index x = 0; x < g.object_count(); ++x) {
    if (g.identity(x) != kNone) out.set_identity(x, g.identity(x));
  }
  for (Index a = 0; a < g.arrow_count(); ++a) {
    if (g.inverse(a) != kNone) out.set_inverse(a, g.inverse(a));
  }
  g.for_each_product([&](Index a, Index b, Index ab) { out.set_product(a, b, ab); });
  return out;
}

bool identical(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count()) return false;
  if (!a.ill_typed_products().empty() || !b.ill_typed_products().empty()) return false;
  std::vector<Index> obj(a.object_count()), arr(a.arrow_count());
  for (Index x = 0; x < a.object_count(); ++x) {
    auto y = b.find_object(a.object_id(x));
    if (!y) return false;
    obj[x] = *y;
  }
  for (Index g = 0; g < a.arrow_count(); ++g) {
    auto h = b.find_arrow(a.arrow(g).id);
    if (!h) return false;
    arr[g] = *h;
    if (obj[a.arrow(g).l] != b.arrow(*h).l || obj[a.arrow(g).r] != b.arrow(*h).r) return false;
  }
  auto map_arrow = [&](Index g) { return g == kNone ? kNone : arr[g]; };
  for (Index x = 0; x < a.object_count(); ++x) {
    if (map_arrow(a.identity(x)) != b.identity(obj[x])) return false;
  }
  for (Index g = 0; g < a.arrow_count(); ++g) {
    if (map_arrow(a.inverse(g)) != b.inverse(arr[g])) return false;
    for (Index h : a.arrows_from(a.arrow(g).r)) {
      auto p = a.product(g, h);
      auto q = b.product(arr[g], arr[h]);
      if (p.has_value() != q.has_value()) return false;
      if (p && arr[*p] != *q) return false;
    }
  }
  return true;
}

bool ValidationReport::has(std::string_view axiom) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.axiom == axiom; });
}

ValidationReport validate(const FiniteGroupoid& g, std::size_t max_violations) {
  ValidationReport report;
  auto add = [&](std::string axiom, std::string witness) {
    if (report.violations.size() >= max_violations) {
      report.truncated = true;
      return false;
    }
    report.violations.push_back({std::move(axiom), std::move(witness)});
    return true;
  };
  const auto n_obj = static_cast<Index>(g.object_count());
  const auto n_arr = static_cast<Index>(g.arrow_count());

  for (const auto& e : g.ill_typed_products()) {
    add("composition domain", "(" + g.arrow(e[0]).id + "," + g.arrow(e[1]).id +
                                  ") has a product although r(first) != l(second)");
  }

  bool identities_ok = true;
  for (Index x = 0; x < n_obj; ++x) {
    const Index e = g.identity(x);
    if (e == kNone) {
      identities_ok = false;
      add("identity axiom", "object '" + g.object_id(x) + "' has no identity arrow");
    } else if (g.arrow(e).l != x || g.arrow(e).r != x) {
      identities_ok = false;
      add("identity axiom", "identity '" + g.arrow(e).id + "' of '" + g.object_id(x) +
                                "' is not a loop at that object");
    }
  }

  bool products_ok = true;
  for (Index a = 0; a < n_arr; ++a) {
    for (Index b : g.arrows_from(g.arrow(a).r)) {
      auto ab = g.product(a, b);
      if (!ab) {
        products_ok = false;
        add("composition totality", "(" + g.arrow(a).id + "," + g.arrow(b).id + ") has no product");
      } else if (g.arrow(*ab).l != g.arrow(a).l || g.arrow(*ab).r != g.arrow(b).r) {
        products_ok = false;
        add("composition anchors", "(" + g.arrow(a).id + "," + g.arrow(b).id + ") -> '" +
                                       g.arrow(*ab).id + "' has wrong anchors");
      }
    }
  }

  if (identities_ok && products_ok) {
    for (Index a = 0; a < n_arr; ++a) {
      const auto& arr = g.arrow(a);
      if (*g.product(g.identity(arr.l), a) != a || *g.product(a, g.identity(arr.r)) != a) {
        add("unit axiom", "identities do not act trivially on '" + arr.id + "'");
      }
    }
  }

  for (Index a = 0; a < n_arr; ++a) {
    const auto& arr = g.arrow(a);
    const Index inv = g.inverse(a);
    if (inv == kNone) {
      add("inverse axiom", "arrow '" + arr.id + "' has no inverse");
      continue;
    }
    if (g.arrow(inv).l != arr.r || g.arrow(inv).r != arr.l) {
      add("inverse axiom", "inverse '" + g.arrow(inv).id + "' of '" + arr.id + "' has wrong anchors");
      continue;
    }
    if (!identities_ok || !products_ok) continue;
    if (*g.product(a, inv) != g.identity(arr.l) || *g.product(inv, a) != g.identity(arr.r)) {
      add("inverse axiom", "'" + arr.id + "' times its inverse '" + g.arrow(inv).id +
                               "' is not an identity");
    }
  }

  if (products_ok) {
    for (Index a = 0; a < n_arr && !report.truncated; ++a) {
      for (Index b : g.arrows_from(g.arrow(a).r)) {
        const Index ab = *g.product(a, b);
        for (Index c : g.arrows_from(g.arrow(b).r)) {
          if (*g.product(ab, c) != *g.product(a, *g.product(b, c))) {
            add("associativity", "(" + g.arrow(a).id + "," + g.arrow(b).id + "," + g.arrow(c).id + ")");
          }
        }
      }
    }
  }
  return report;
}

WeightData WeightData::unit(std::size_t objects) {
  return {Section(objects, Rational(1)), Section(objects, Rational(1))};
}

Section WeightData::lambda() const {
  Section out(a.size());
  for (Index x = 0; x < a.size(); ++x) out[x] = lambda(x);
  return out;
}

OrbitDecomposition orbits(const FiniteGroupoid& g) {
  const auto n = static_cast<Index>(g.object_count());
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> loops(n, 0);
  for (const auto& a : g.arrows()) {
    const Index p = find(a.l), q = find(a.r);
    if (p != q) parent[std::max(p, q)] = std::min(p, q);
    if (a.l == a.r) ++loops[a.l];
  }

  OrbitDecomposition dec;
  dec.orbit_of.assign(n, kNone);
  std::vector<Index> slot(n, kNone);
  for (Index x = 0; x < n; ++x) {
    const Index root = find(x);
    if (slot[root] == kNone) {
      slot[root] = static_cast<Index>(dec.orbits.size());
      dec.orbits.push_back({{}, loops[x], x});
    }
    auto& orbit = dec.orbits[slot[root]];
    if (loops[x] != orbit.isotropy_order) {
      throw ValidationError("objects '" + g.object_id(orbit.representative) + "' and '" + g.object_id(x) +
                            "' share an orbit but have different isotropy orders");
    }
    if (loops[x] == 0) throw ValidationError("object '" + g.object_id(x) + "' has no loops");
    orbit.objects.push_back(x);
    dec.orbit_of[x] = slot[root];
  }
  return dec;
}

Rational cardinality(const FiniteGroupoid& g) {
  Rational total(0);
  for (const auto& o : orbits(g).orbits) total += Rational(1, o.isotropy_order);
  return total;
}

namespace {

void check_weights(const FiniteGroupoid& g, const WeightData& w) {
  if (w.a.size() != g.object_count() || w.b.size() != g.object_count()) {
    throw ValidationError("weight data does not cover the object set");
  }
  for (Index x = 0; x < w.a.size(); ++x) {
    if (w.a[x] == 0) throw ValidationError("weight a vanishes at object '" + g.object_id(x) + "'");
  }
}

}  // namespace

Rational fiber_volume(const FiniteGroupoid& g, const WeightData& w) {
  check_weights(g, w);
  Rational total(0), fiber;
  for (Index y = 0; y < g.object_count(); ++y) {
    fiber = 0;
    for (Index arrow : g.arrows_into(y)) fiber += w.a[g.arrow(arrow).l];
    if (fiber == 0) {
      throw DegenerateWeightError("degenerate weight: the r-fiber sum of a over '" + g.object_id(y) +
                                  "' vanishes");
    }
    total += w.b[y] / fiber;
  }
  return total;
}

namespace {

Section orbit_lambdas(const FiniteGroupoid& g, const WeightData& w, const OrbitDecomposition& dec) {
  check_weights(g, w);
  Section out;
  out.reserve(dec.orbits.size());
  for (const auto& o : dec.orbits) {
    const Rational value = w.lambda(o.representative);
    for (Index x : o.objects) {
      if (w.lambda(x) != value) {
        throw NonInvariantSectionError(g.object_id(o.representative),
                                       "lambda(" + g.object_id(x) + ") = " + to_string(w.lambda(x)) +
                                           " differs from " + to_string(value));
      }
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace

Rational orbit_volume(const FiniteGroupoid& g, const WeightData& w) {
  const auto dec = orbits(g);
  const auto lambda = orbit_lambdas(g, w, dec);
  Rational total(0);
  for (std::size_t k = 0; k < dec.orbits.size(); ++k) {
    total += lambda[k] / Rational(dec.orbits[k].isotropy_order);
  }
  return total;
}

Rational orbit_set_measure(const FiniteGroupoid& g, const WeightData& w,
                           std::span<const Index> orbit_set) {
  const auto dec = orbits(g);
  const auto lambda = orbit_lambdas(g, w, dec);
  std::set<Index> chosen;
  for (Index k : orbit_set) {
    if (k >= dec.orbits.size()) throw ValidationError("unknown orbit id " + std::to_string(k));
    chosen.insert(k);
  }
  Rational total(0);
  for (Index k : chosen) total += lambda[k] / Rational(dec.orbits[k].isotropy_order);
  return total;
}

bool is_invariant(const FiniteGroupoid& g, const Section& section) {
  if (section.size() != g.object_count()) return false;
  return std::all_of(g.arrows().begin(), g.arrows().end(),
                     [&](const Arrow& a) { return section[a.l] == section[a.r]; });
}

FiniteGroupoid action_groupoid(const FiniteGroup& group, const ActionTable& action,
                               const std::vector<std::string>& point_ids) {
  if (auto why = action_violation(group, action); !why.empty()) {
    throw ValidationError("not a group action: " + why);
  }
  const auto points = static_cast<Index>(action.empty() ? 0 : action.front().size());
  const Index order = group.order();
  std::vector<std::string> objects;
  for (Index x = 0; x < points; ++x) {
    objects.push_back(point_ids.empty() ? "x" + std::to_string(x) : point_ids.at(x));
  }
  // arrow (h, x) at index h * points + x
  std::vector<Arrow> arrows;
  arrows.reserve(std::size_t{order} * points);
  for (Index h = 0; h < order; ++h) {
    for (Index x = 0; x < points; ++x) {
      arrows.push_back({"(" + std::to_string(h) + "," + objects[x] + ")", action[h][x], x});
    }
  }
  FiniteGroupoid g(std::move(objects), std::move(arrows));
  auto id = [&](Index h, Index x) { return h * points + x; };
  for (Index x = 0; x < points; ++x) g.set_identity(x, id(group.identity(), x));
  for (Index h = 0; h < order; ++h) {
    for (Index x = 0; x < points; ++x) {
      g.set_inverse(id(h, x), id(group.inverse(h), action[h][x]));
      // (h, x)(k, y) requires x = k.y and gives (hk, y)
      for (Index k = 0; k < order; ++k) {
        for (Index y = 0; y < points; ++y) {
          if (action[k][y] == x) g.set_product(id(h, x), id(k, y), id(group.multiply(h, k), y));
        }
      }
    }
  }
  return g;
}

FiniteGroupoid pair_groupoid(Index n) { return block_groupoid({Block{n, FiniteGroup::trivial()}}); }

FiniteGroupoid classifying_groupoid(const FiniteGroup& group) { return block_groupoid({Block{1, group}}); }

FiniteGroupoid block_groupoid(const std::vector<Block>& blocks, std::string_view prefix) {
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<Index> object_base, arrow_base;
  const std::string pre(prefix);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Index n = blocks[b].objects, m = blocks[b].group.order();
    const auto base = static_cast<Index>(objects.size());
    object_base.push_back(base);
    arrow_base.push_back(static_cast<Index>(arrows.size()));
    for (Index i = 0; i < n; ++i) objects.push_back(pre + "o" + std::to_string(base + i));
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        for (Index gamma = 0; gamma < m; ++gamma) {
          arrows.push_back({pre + "b" + std::to_string(b) + ":" + std::to_string(i) + ">" + std::to_string(j) +
                                ":" + std::to_string(gamma),
                            base + i, base + j});
        }
      }
    }
  }
  FiniteGroupoid g(std::move(objects), std::move(arrows));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& group = blocks[b].group;
    const Index n = blocks[b].objects, m = group.order();
    auto id = [&](Index i, Index j, Index gamma) { return arrow_base[b] + (i * n + j) * m + gamma; };
    for (Index i = 0; i < n; ++i) g.set_identity(object_base[b] + i, id(i, i, group.identity()));
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        for (Index gamma = 0; gamma < m; ++gamma) {
          g.set_inverse(id(i, j, gamma), id(j, i, group.inverse(gamma)));
          for (Index k = 0; k < n; ++k) {
            for (Index delta = 0; delta < m; ++delta) {
              g.set_product(id(i, j, gamma), id(j, k, delta), id(i, k, group.multiply(gamma, delta)));
            }
          }
        }
      }
    }
  }
  return g;
}

std::vector<Block> random_blocks(Engine& rng, const GeneratorBounds& bounds) {
  if (bounds.max_objects == 0 || bounds.max_group_order == 0) {
    throw ValidationError("generator bounds must be positive");
  }
  const auto groups = small_groups(bounds.max_group_order);
  const auto total = static_cast<Index>(uniform_between(rng, 1, bounds.max_objects));
  const Index block_cap = std::max<Index>(1, bounds.max_objects / 4);
  std::vector<Block> blocks;
  for (Index remaining = total; remaining > 0;) {
    const auto size = static_cast<Index>(uniform_between(rng, 1, std::min(remaining, block_cap)));
    blocks.push_back({size, groups[uniform_below(rng, groups.size())]});
    remaining -= size;
  }
  return blocks;
}

FiniteGroupoid random_groupoid(std::uint64_t seed, const GeneratorBounds& bounds) {
  Engine rng(seed);
  return block_groupoid(random_blocks(rng, bounds));
}

WeightData random_invariant_weights(Engine& rng, const FiniteGroupoid& g) {
  const auto dec = orbits(g);
  WeightData w;
  w.a.resize(g.object_count());
  w.b.resize(g.object_count());
  for (const auto& o : dec.orbits) {
    Rational lambda(uniform_between(rng, -9, 9), uniform_between(rng, 1, 9));
    lambda.canonicalize();
    for (Index x : o.objects) {
      Rational a(uniform_between(rng, 1, 9), uniform_between(rng, 1, 9));
      a.canonicalize();
      w.a[x] = a;
      w.b[x] = lambda * a;
    }
  }
  return w;
}

Rational finite_sets_cardinality(unsigned cutoff) {
  Rational total(0);
  mpz_class factorial(1);
  for (unsigned n = 0; n <= cutoff; ++n) {
    if (n > 0) factorial *= n;
    total += Rational(mpz_class(1), factorial);
  }
  return total;
}

}  // namespace stackvol

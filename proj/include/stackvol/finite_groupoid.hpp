#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stackvol/finite_group.hpp"
#include "stackvol/random.hpp"
#include "stackvol/rational.hpp"

namespace stackvol {

/// An arrow runs from its left anchor l to its right anchor r; the product
/// gh is defined exactly when r(g) == l(h).
struct Arrow {
  std::string id;
  Index l = kNone;
  Index r = kNone;
};

/// Finite groupoid stored as explicit structure tables.
///
/// Objects and arrows are addressed by dense indices; string ids are kept for
/// interchange. The product table is laid out row-per-arrow over the
/// composable partners, so it has exactly one slot for every composable pair.
/// Entries supplied for non-composable pairs are kept aside so that
/// validate() can report them.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  /// Throws InputError on duplicate ids or anchors out of range.
  FiniteGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& object_id(Index x) const { return objects_[x]; }
  const std::vector<std::string>& object_ids() const { return objects_; }
  const Arrow& arrow(Index g) const { return arrows_[g]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::optional<Index> find_object(std::string_view id) const;
  std::optional<Index> find_arrow(std::string_view id) const;

  /// kNone when unset.
  Index identity(Index x) const { return identity_[x]; }
  Index inverse(Index g) const { return inverse_[g]; }
  /// nullopt when the pair is not composable or the entry is unset.
  std::optional<Index> product(Index g, Index h) const;

  void set_identity(Index x, Index g);
  void set_inverse(Index g, Index g_inv);
  void set_product(Index g, Index h, Index gh);

  /// Arrows with l == x.
  std::span<const Index> arrows_from(Index x) const;
  /// Arrows with r == y.
  std::span<const Index> arrows_into(Index y) const;

  const std::vector<std::array<Index, 3>>& ill_typed_products() const { return ill_typed_; }

  /// Calls f(g, h, gh) for every product entry that is set, composable ones first.
  template <typename F>
  void for_each_product(F&& f) const {
    for (Index g = 0; g < arrows_.size(); ++g) {
      const auto partners = arrows_from(arrows_[g].r);
      for (std::size_t k = 0; k < partners.size(); ++k) {
        const Index gh = products_[row_offset_[g] + k];
        if (gh != kNone) f(g, partners[k], gh);
      }
    }
    for (const auto& e : ill_typed_) f(e[0], e[1], e[2]);
  }

 private:
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, Index> object_lookup_;
  std::unordered_map<std::string, Index> arrow_lookup_;
  std::vector<Index> identity_;
  std::vector<Index> inverse_;
  // CSR adjacency grouped by l and by r
  std::vector<std::size_t> from_offset_, into_offset_;
  std::vector<Index> from_list_, into_list_;
  std::vector<Index> position_in_from_;
  std::vector<std::size_t> row_offset_;
  std::vector<Index> products_;
  std::vector<std::array<Index, 3>> ill_typed_;
};

/// Copy with every object and arrow id passed through the given maps.
FiniteGroupoid relabel(const FiniteGroupoid& g, const std::function<std::string(const std::string&)>& object_id,
                       const std::function<std::string(const std::string&)>& arrow_id);

/// Same ids and same structure tables, compared through ids.
bool identical(const FiniteGroupoid& a, const FiniteGroupoid& b);

struct Violation {
  std::string axiom;
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool truncated = false;
  bool ok() const { return violations.empty(); }
  bool has(std::string_view axiom) const;
};

/// Checks every groupoid axiom; at most `max_violations` are collected.
ValidationReport validate(const FiniteGroupoid& g, std::size_t max_violations = 100);

/// Per-object sections and weights, aligned with object indices.
using Section = std::vector<Rational>;

struct WeightData {
  Section a;  ///< nowhere zero
  Section b;

  static WeightData unit(std::size_t objects);
  Rational lambda(Index x) const { return b[x] / a[x]; }
  Section lambda() const;
};

struct Orbit {
  std::vector<Index> objects;  ///< ascending
  std::size_t isotropy_order = 0;
  Index representative = kNone;  ///< smallest object index of the orbit
};

struct OrbitDecomposition {
  std::vector<Orbit> orbits;     ///< ordered by representative
  std::vector<Index> orbit_of;   ///< object -> orbit position
};

/// Throws ValidationError when anchors are inconsistent with a groupoid
/// (e.g. unequal isotropy inside an orbit).
OrbitDecomposition orbits(const FiniteGroupoid& g);

/// Sum over orbits of 1/#isotropy.
Rational cardinality(const FiniteGroupoid& g);

/// Sum over y of (sum over g in r^-1(y) of a(l(g)))^-1 b(y).
/// Throws DegenerateWeightError when an inner sum vanishes.
Rational fiber_volume(const FiniteGroupoid& g, const WeightData& w);

/// Sum over orbits of lambda(O)/#isotropy. Throws NonInvariantSectionError.
Rational orbit_volume(const FiniteGroupoid& g, const WeightData& w);

/// Measure of the preimage of a finite set of orbits (orbit positions in
/// orbits(g)). Duplicates count once. Throws ValidationError on unknown ids.
Rational orbit_set_measure(const FiniteGroupoid& g, const WeightData& w,
                           std::span<const Index> orbit_set);

bool is_invariant(const FiniteGroupoid& g, const Section& section);

/// Transformation groupoid H x X => X: arrow (h, x) has l = h.x, r = x.
FiniteGroupoid action_groupoid(const FiniteGroup& group, const ActionTable& action,
                               const std::vector<std::string>& point_ids = {});

FiniteGroupoid pair_groupoid(Index n);
/// pt//H.
FiniteGroupoid classifying_groupoid(const FiniteGroup& group);

struct Block {
  Index objects = 1;
  FiniteGroup group = FiniteGroup::trivial();
};

/// Disjoint union of (pair groupoid on n_i objects) x Gamma_i. Object ids are
/// "<prefix>o<k>", arrow ids "<prefix>b<block>:<i>><j>:<gamma>".
FiniteGroupoid block_groupoid(const std::vector<Block>& blocks, std::string_view prefix = "");

struct GeneratorBounds {
  Index max_objects = 40;
  Index max_group_order = 8;
};

std::vector<Block> random_blocks(Engine& rng, const GeneratorBounds& bounds);
FiniteGroupoid random_groupoid(std::uint64_t seed, const GeneratorBounds& bounds);

/// Random invariant weight pair: positive a, arbitrary rational lambda per orbit.
WeightData random_invariant_weights(Engine& rng, const FiniteGroupoid& g);

/// Partial sum over n <= cutoff of 1/n!.
Rational finite_sets_cardinality(unsigned cutoff);

}  // namespace stackvol

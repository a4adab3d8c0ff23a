#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stackvol {

using Index = std::uint32_t;
inline constexpr Index kNone = static_cast<Index>(-1);

/// A finite group given by its Cayley table. Elements are 0..order()-1.
class FiniteGroup {
 public:
  /// Validates closure, associativity, a two-sided identity and inverses.
  /// Throws ValidationError on failure.
  FiniteGroup(std::string name, std::vector<std::vector<Index>> table);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(Index n);
  /// Symmetries of the regular n-gon, order 2n.
  static FiniteGroup dihedral(Index n);
  static FiniteGroup symmetric(Index n);
  static FiniteGroup quaternion();
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  Index order() const { return static_cast<Index>(table_.size()); }
  Index multiply(Index a, Index b) const { return table_[a][b]; }
  Index identity() const { return identity_; }
  Index inverse(Index a) const { return inverse_[a]; }
  const std::string& name() const { return name_; }

  /// The cyclic subgroup generated by `g`, sorted.
  std::vector<Index> generated_subgroup(Index g) const;

 private:
  std::string name_;
  std::vector<std::vector<Index>> table_;
  Index identity_ = 0;
  std::vector<Index> inverse_;
};

/// Every group in a fixed catalog whose order is at most `max_order`
/// (cyclic, dihedral, S3, Q8 and small direct products).
std::vector<FiniteGroup> small_groups(Index max_order);

/// action[h][x] = h . x for a left action on points 0..n-1.
using ActionTable = std::vector<std::vector<Index>>;

/// Empty string when `action` is a left action of `group`, otherwise a
/// description of the first failing axiom.
std::string action_violation(const FiniteGroup& group, const ActionTable& action);

ActionTable trivial_action(const FiniteGroup& group, Index points);
/// Left translation on `copies` disjoint copies of the group (free).
ActionTable translation_action(const FiniteGroup& group, Index copies = 1);
ActionTable conjugation_action(const FiniteGroup& group);
/// Left multiplication on the left cosets of `subgroup`.
ActionTable coset_action(const FiniteGroup& group, const std::vector<Index>& subgroup);
/// Disjoint union of two actions of the same group.
ActionTable disjoint_union(const ActionTable& first, const ActionTable& second);

}  // namespace stackvol

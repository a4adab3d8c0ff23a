#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stackvol/finite_groupoid.hpp"

namespace stackvol {

/// A (G', G'')-bibundle: G' acts on the left over the left anchor, G'' on the
/// right over the right anchor.
///
/// g . b is defined when r(g) == left_anchor(b) and lands over l(g);
/// b . h is defined when right_anchor(b) == l(h) and lands over r(h).
class Bibundle {
 public:
  Bibundle() = default;
  Bibundle(std::vector<std::string> elements, std::vector<Index> left_anchor,
           std::vector<Index> right_anchor);

  std::size_t size() const { return elements_.size(); }
  const std::string& element_id(Index b) const { return elements_[b]; }
  const std::vector<std::string>& element_ids() const { return elements_; }
  std::optional<Index> find_element(const std::string& id) const;
  Index left_anchor(Index b) const { return left_anchor_[b]; }
  Index right_anchor(Index b) const { return right_anchor_[b]; }

  void set_left_action(Index g, Index b, Index result);
  void set_right_action(Index b, Index h, Index result);
  std::optional<Index> left_act(Index g, Index b) const;
  std::optional<Index> right_act(Index b, Index h) const;

  /// Entries as (g, b, g.b) and (b, h, b.h), sorted.
  std::vector<std::array<Index, 3>> left_entries() const;
  std::vector<std::array<Index, 3>> right_entries() const;

 private:
  static std::uint64_t key(Index x, Index y) { return (std::uint64_t{x} << 32) | y; }

  std::vector<std::string> elements_;
  std::unordered_map<std::string, Index> lookup_;
  std::vector<Index> left_anchor_, right_anchor_;
  std::unordered_map<std::uint64_t, Index> left_action_, right_action_;
};

/// Checks typing, unit/associativity, commuting actions and that both
/// anchors are principal (actions free and transitive on the opposite fibers).
ValidationReport validate_bibundle(const FiniteGroupoid& left, const FiniteGroupoid& right,
                                   const Bibundle& bundle, std::size_t max_violations = 100);

/// Groupoid on left.objects + right.objects (in that order) whose arrows are
/// left, right, B ("bridge:") and a formal inverse copy of B ("cobridge:").
/// Ids are namespaced "left:" / "right:". Throws ValidationError for an
/// invalid bibundle.
FiniteGroupoid linking_groupoid(const FiniteGroupoid& left, const FiniteGroupoid& right,
                                const Bibundle& bundle);

/// One factor of a linking groupoid, recovered by restriction with the
/// "left:" / "right:" namespace removed from its ids.
FiniteGroupoid linking_side(const FiniteGroupoid& link, std::size_t left_objects, bool right_side);

/// Full subgroupoid on `subset`; ids are preserved and objects keep their
/// relative order. Throws NotFullError if an orbit is missed.
FiniteGroupoid restrict_full(const FiniteGroupoid& g, const std::vector<Index>& subset);

/// Unique orbitwise-constant extension of a section given on a full subset
/// (`values[k]` belongs to `subset[k]`).
Section extend_invariant_section(const FiniteGroupoid& g, const std::vector<Index>& subset,
                                 const Section& values);

/// Image of an invariant section of `left` under the bibundle, computed by
/// extending through the linking groupoid and restricting to the right side.
Section transfer_section(const FiniteGroupoid& left, const FiniteGroupoid& right,
                         const Bibundle& bundle, const Section& lambda_left);

struct MoritaReport {
  Rational left_volume;
  Rational right_volume;
  bool equal() const { return left_volume == right_volume; }
};

/// Throws SectionMismatchError unless right.lambda is the transfer of left.lambda.
MoritaReport morita_volume_check(const FiniteGroupoid& left, const FiniteGroupoid& right,
                                 const Bibundle& bundle, const WeightData& left_weights,
                                 const WeightData& right_weights);

/// The groupoid's arrows as a self-bibundle, actions by composition.
Bibundle identity_bibundle(const FiniteGroupoid& g);

struct Restriction {
  FiniteGroupoid restricted;
  Bibundle bundle;  ///< (restricted, g)-bibundle: arrows of g whose l lies in the subset
};

Restriction restriction_bibundle(const FiniteGroupoid& g, const std::vector<Index>& subset);

/// The same elements read as a (right, left)-bibundle.
Bibundle reverse_bibundle(const FiniteGroupoid& left, const FiniteGroupoid& right, const Bibundle& bundle);

/// B1 x_H B2 modulo (b1 h, b2) ~ (b1, h b2), enumerated exhaustively.
Bibundle compose_bibundles(const FiniteGroupoid& first, const FiniteGroupoid& middle,
                           const FiniteGroupoid& last, const Bibundle& b1, const Bibundle& b2);

/// Bibundle between two block groupoids with the same groups block-by-block:
/// elements (i, j, gamma) from object i of `left` to object j of `right`.
Bibundle block_bibundle(const std::vector<Block>& left_blocks, const std::vector<Block>& right_blocks);

struct MoritaTriple {
  FiniteGroupoid left;
  FiniteGroupoid right;
  Bibundle bundle;
};

/// Seeded Morita-equivalent pair: either a resized block presentation or a
/// restriction to a random full subset.
MoritaTriple random_morita_triple(std::uint64_t seed, const GeneratorBounds& bounds);

}  // namespace stackvol

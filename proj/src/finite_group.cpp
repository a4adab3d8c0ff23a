#include "stackvol/finite_group.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "stackvol/errors.hpp"

namespace stackvol {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<Index>> table)
    : name_(std::move(name)), table_(std::move(table)) {
  const Index n = order();
  if (n == 0) throw ValidationError("group '" + name_ + "' has no elements");
  for (const auto& row : table_) {
    if (row.size() != n) throw ValidationError("group '" + name_ + "': table is not square");
    for (Index v : row) {
      if (v >= n) throw ValidationError("group '" + name_ + "': table not closed");
    }
  }
  identity_ = kNone;
  for (Index e = 0; e < n && identity_ == kNone; ++e) {
    bool unit = true;
    for (Index a = 0; a < n && unit; ++a) unit = table_[e][a] == a && table_[a][e] == a;
    if (unit) identity_ = e;
  }
  if (identity_ == kNone) throw ValidationError("group '" + name_ + "': no identity element");

  inverse_.assign(n, kNone);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (table_[a][b] == identity_ && table_[b][a] == identity_) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] == kNone) {
      throw ValidationError("group '" + name_ + "': element " + std::to_string(a) + " has no inverse");
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          throw ValidationError("group '" + name_ + "': associativity fails at (" + std::to_string(a) +
                                "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
    }
  }
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(Index n) {
  std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup("Z" + std::to_string(n), std::move(t));
}

FiniteGroup FiniteGroup::dihedral(Index n) {
  // element (k, s) <-> r^k f^s, stored as k + n*s
  const Index order = 2 * n;
  std::vector<std::vector<Index>> t(order, std::vector<Index>(order));
  for (Index a = 0; a < order; ++a) {
    for (Index b = 0; b < order; ++b) {
      const Index k1 = a % n, s1 = a / n, k2 = b % n, s2 = b / n;
      const Index k = s1 == 0 ? (k1 + k2) % n : (k1 + n - k2) % n;
      t[a][b] = k + n * ((s1 + s2) % 2);
    }
  }
  return FiniteGroup("D" + std::to_string(n), std::move(t));
}

FiniteGroup FiniteGroup::symmetric(Index n) {
  std::vector<std::vector<Index>> perms;
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), Index{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<Index>, Index> lookup;
  for (Index i = 0; i < perms.size(); ++i) lookup[perms[i]] = i;

  // (a*b)(x) = a(b(x))
  std::vector<std::vector<Index>> t(perms.size(), std::vector<Index>(perms.size()));
  std::vector<Index> composed(n);
  for (Index a = 0; a < perms.size(); ++a) {
    for (Index b = 0; b < perms.size(); ++b) {
      for (Index x = 0; x < n; ++x) composed[x] = perms[a][perms[b][x]];
      t[a][b] = lookup.at(composed);
    }
  }
  return FiniteGroup("S" + std::to_string(n), std::move(t));
}

FiniteGroup FiniteGroup::quaternion() {
  // unit u in {1,i,j,k} (0..3), sign s in {+,-}; element = u + 4*s
  static constexpr std::array<std::array<Index, 4>, 4> unit_product{{
      {0, 1, 2, 3},
      {1, 0, 3, 2},
      {2, 3, 0, 1},
      {3, 2, 1, 0},
  }};
  static constexpr std::array<std::array<Index, 4>, 4> unit_sign{{
      {0, 0, 0, 0},
      {0, 1, 0, 1},
      {0, 1, 1, 0},
      {0, 0, 1, 1},
  }};
  std::vector<std::vector<Index>> t(8, std::vector<Index>(8));
  for (Index a = 0; a < 8; ++a) {
    for (Index b = 0; b < 8; ++b) {
      const Index u1 = a % 4, s1 = a / 4, u2 = b % 4, s2 = b / 4;
      t[a][b] = unit_product[u1][u2] + 4 * ((s1 + s2 + unit_sign[u1][u2]) % 2);
    }
  }
  return FiniteGroup("Q8", std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const Index m = h.order();
  const Index n = g.order() * m;
  std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      t[a][b] = g.multiply(a / m, b / m) * m + h.multiply(a % m, b % m);
    }
  }
  return FiniteGroup(g.name() + "x" + h.name(), std::move(t));
}

std::vector<Index> FiniteGroup::generated_subgroup(Index g) const {
  std::vector<Index> out{identity_};
  for (Index x = g; x != identity_; x = multiply(x, g)) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FiniteGroup> small_groups(Index max_order) {
  std::vector<FiniteGroup> out;
  for (Index n = 1; n <= max_order; ++n) out.push_back(FiniteGroup::cyclic(n));
  if (max_order >= 4) {
    out.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
  }
  if (max_order >= 6) out.push_back(FiniteGroup::symmetric(3));
  if (max_order >= 8) {
    out.push_back(FiniteGroup::dihedral(4));
    out.push_back(FiniteGroup::quaternion());
    out.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)));
    out.push_back(FiniteGroup::direct_product(
        FiniteGroup::cyclic(2), FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))));
  }
  return out;
}

std::string action_violation(const FiniteGroup& group, const ActionTable& action) {
  if (action.size() != group.order()) return "action table has wrong number of rows";
  const std::size_t points = action.empty() ? 0 : action.front().size();
  for (const auto& row : action) {
    if (row.size() != points) return "action table rows differ in length";
    for (Index y : row) {
      if (y >= points) return "action maps outside the point set";
    }
  }
  for (Index x = 0; x < points; ++x) {
    if (action[group.identity()][x] != x) {
      return "identity does not fix point " + std::to_string(x);
    }
  }
  for (Index g = 0; g < group.order(); ++g) {
    for (Index h = 0; h < group.order(); ++h) {
      for (Index x = 0; x < points; ++x) {
        if (action[group.multiply(g, h)][x] != action[g][action[h][x]]) {
          return "compatibility fails for (" + std::to_string(g) + "," + std::to_string(h) +
                 ") at point " + std::to_string(x);
        }
      }
    }
  }
  return {};
}

ActionTable trivial_action(const FiniteGroup& group, Index points) {
  ActionTable t(group.order(), std::vector<Index>(points));
  for (auto& row : t) std::iota(row.begin(), row.end(), Index{0});
  return t;
}

ActionTable translation_action(const FiniteGroup& group, Index copies) {
  const Index n = group.order();
  ActionTable t(n, std::vector<Index>(n * copies));
  for (Index h = 0; h < n; ++h) {
    for (Index c = 0; c < copies; ++c) {
      for (Index x = 0; x < n; ++x) t[h][c * n + x] = c * n + group.multiply(h, x);
    }
  }
  return t;
}

ActionTable conjugation_action(const FiniteGroup& group) {
  const Index n = group.order();
  ActionTable t(n, std::vector<Index>(n));
  for (Index h = 0; h < n; ++h) {
    for (Index x = 0; x < n; ++x) t[h][x] = group.multiply(group.multiply(h, x), group.inverse(h));
  }
  return t;
}

ActionTable coset_action(const FiniteGroup& group, const std::vector<Index>& subgroup) {
  const Index n = group.order();
  // coset of x is x*subgroup, keyed by its sorted element list
  std::map<std::vector<Index>, Index> coset_ids;
  std::vector<Index> coset_of(n);
  for (Index x = 0; x < n; ++x) {
    std::vector<Index> coset;
    for (Index s : subgroup) coset.push_back(group.multiply(x, s));
    std::sort(coset.begin(), coset.end());
    auto [it, inserted] = coset_ids.emplace(coset, static_cast<Index>(coset_ids.size()));
    coset_of[x] = it->second;
  }
  const Index cosets = static_cast<Index>(coset_ids.size());
  std::vector<Index> representative(cosets, kNone);
  for (Index x = 0; x < n; ++x) {
    if (representative[coset_of[x]] == kNone) representative[coset_of[x]] = x;
  }
  ActionTable t(n, std::vector<Index>(cosets));
  for (Index h = 0; h < n; ++h) {
    for (Index c = 0; c < cosets; ++c) t[h][c] = coset_of[group.multiply(h, representative[c])];
  }
  return t;
}

ActionTable disjoint_union(const ActionTable& first, const ActionTable& second) {
  ActionTable t = first;
  const Index offset = first.empty() ? 0 : static_cast<Index>(first.front().size());
  for (std::size_t h = 0; h < t.size(); ++h) {
    for (Index y : second[h]) t[h].push_back(y + offset);
  }
  return t;
}

}  // namespace stackvol

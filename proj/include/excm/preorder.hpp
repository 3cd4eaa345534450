#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "excm/errors.hpp"

namespace excm {

// Set of worlds, identified by their indices in a fixed enumeration.
using WorldSet = boost::dynamic_bitset<>;

[[nodiscard]] WorldSet make_set(std::size_t n, std::initializer_list<std::size_t> members);
[[nodiscard]] std::string set_to_string(const WorldSet& s);

// Partial preorder over world indices 0..n-1. Stored as the weak relation
// (i >= j), closed under reflexivity and transitivity at construction.
class Preorder {
 public:
  Preorder() = default;

  // Declared weak pairs (i >= j); the closure is taken here.
  static Preorder from_pairs(
      std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& geq_pairs);
  // rows[i] = set of j with i >= j. Must already be reflexive and transitive.
  static Preorder from_rows(std::vector<WorldSet> rows);

  [[nodiscard]] std::size_t size() const { return rows_.size(); }
  [[nodiscard]] bool geq(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  [[nodiscard]] bool gt(std::size_t i, std::size_t j) const {
    return rows_[i][j] && !rows_[j][i];
  }
  [[nodiscard]] bool equiv(std::size_t i, std::size_t j) const {
    return rows_[i][j] && rows_[j][i];
  }
  // Worlds world i dominates (its weak lower set).
  [[nodiscard]] const WorldSet& down(std::size_t i) const { return rows_[i]; }

  // Union of lower sets of U's members. This is the largest member of U's
  // equivalence class under the lifted order, hence the canonical
  // representative of that class.
  [[nodiscard]] WorldSet downward_closure(const WorldSet& u) const;

  // Lifted set comparison: U >= V iff every member of V is dominated by some
  // member of U.
  [[nodiscard]] bool set_geq(const WorldSet& u, const WorldSet& v) const;

  bool operator==(const Preorder&) const = default;

 private:
  std::vector<WorldSet> rows_;
};

enum class Relation { less, greater, equal, incomparable };
[[nodiscard]] const char* to_string(Relation r);

// Element of the plausibility domain induced by a preorder: bottom, top, or a
// formal conditional indexed by a pair of equivalence classes, each stored as
// its canonical (downward-closed) representative.
class PlausibilityValue {
 public:
  static PlausibilityValue bottom();
  static PlausibilityValue top();
  static PlausibilityValue conditional(WorldSet numerator, WorldSet conditioning);

  [[nodiscard]] bool is_bottom() const { return tag_ == Tag::bottom; }
  [[nodiscard]] bool is_top() const { return tag_ == Tag::top; }
  [[nodiscard]] bool is_conditional() const { return tag_ == Tag::conditional; }
  [[nodiscard]] const WorldSet& numerator() const { return num_; }
  [[nodiscard]] const WorldSet& conditioning() const { return cond_; }

  bool operator==(const PlausibilityValue&) const = default;
  [[nodiscard]] std::string to_string() const;

 private:
  enum class Tag { bottom, conditional, top };
  Tag tag_ = Tag::bottom;
  WorldSet num_, cond_;
};

// The measure the preorder induces: bottom when U misses V entirely, top when
// U covers V up to class equivalence, otherwise the conditional indexed by the
// classes of U∩V and V. Conditioning on the empty set is an error.
[[nodiscard]] PlausibilityValue conditional_plausibility(const Preorder& pre,
                                                         const WorldSet& u,
                                                         const WorldSet& v);

// Partial order on the domain: bottom < conditional < top; conditionals
// compare only within one conditioning class, by inclusion of canonical
// numerator representatives.
[[nodiscard]] Relation compare_values(const PlausibilityValue& a,
                                      const PlausibilityValue& b);

// True when conditioning on v_cond makes u independent of v: either v∩v_cond
// is empty, or Pl(u | v∩v_cond) equals Pl(u | v_cond).
[[nodiscard]] bool check_independence(const Preorder& pre, const WorldSet& u,
                                      const WorldSet& v, const WorldSet& v_cond);

}  // namespace excm

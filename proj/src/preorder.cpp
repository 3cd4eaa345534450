#include "excm/preorder.hpp"

#include <cassert>

namespace excm {

WorldSet make_set(std::size_t n, std::initializer_list<std::size_t> members) {
  WorldSet s(n);
  for (std::size_t m : members) s.set(m);
  return s;
}

std::string set_to_string(const WorldSet& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = s.find_first(); i != WorldSet::npos; i = s.find_next(i)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

Preorder Preorder::from_pairs(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& geq_pairs) {
  std::vector<WorldSet> rows(n, WorldSet(n));
  for (std::size_t i = 0; i < n; ++i) rows[i].set(i);
  for (const auto& [i, j] : geq_pairs) {
    assert(i < n && j < n);
    rows[i].set(j);
  }
  // Warshall closure on bit rows.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rows[i][k]) rows[i] |= rows[k];
  Preorder p;
  p.rows_ = std::move(rows);
  return p;
}

Preorder Preorder::from_rows(std::vector<WorldSet> rows) {
#ifndef NDEBUG
  for (std::size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].size() == rows.size());
    assert(rows[i][i]);
    for (std::size_t k = rows[i].find_first(); k != WorldSet::npos;
         k = rows[i].find_next(k))
      assert(rows[k].is_subset_of(rows[i]));
  }
#endif
  Preorder p;
  p.rows_ = std::move(rows);
  return p;
}

WorldSet Preorder::downward_closure(const WorldSet& u) const {
  WorldSet out(size());
  for (std::size_t i = u.find_first(); i != WorldSet::npos; i = u.find_next(i))
    out |= rows_[i];
  return out;
}

bool Preorder::set_geq(const WorldSet& u, const WorldSet& v) const {
  return v.is_subset_of(downward_closure(u));
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::less: return "less";
    case Relation::greater: return "greater";
    case Relation::equal: return "equal";
    case Relation::incomparable: return "incomparable";
  }
  return "?";
}

PlausibilityValue PlausibilityValue::bottom() {
  PlausibilityValue v;
  v.tag_ = Tag::bottom;
  return v;
}

PlausibilityValue PlausibilityValue::top() {
  PlausibilityValue v;
  v.tag_ = Tag::top;
  return v;
}

PlausibilityValue PlausibilityValue::conditional(WorldSet numerator,
                                                WorldSet conditioning) {
  assert(numerator.any());
  assert(numerator != conditioning);
  assert(numerator.is_subset_of(conditioning));
  PlausibilityValue v;
  v.tag_ = Tag::conditional;
  v.num_ = std::move(numerator);
  v.cond_ = std::move(conditioning);
  return v;
}

std::string PlausibilityValue::to_string() const {
  switch (tag_) {
    case Tag::bottom: return "bottom";
    case Tag::top: return "top";
    case Tag::conditional:
      return "d[" + set_to_string(num_) + "|" + set_to_string(cond_) + "]";
  }
  return "?";
}

PlausibilityValue conditional_plausibility(const Preorder& pre, const WorldSet& u,
                                           const WorldSet& v) {
  assert(u.size() == pre.size() && v.size() == pre.size());
  if (v.none())
    throw EmptyConditioningSet("conditioning on the empty set");
  WorldSet c = u & v;
  if (c.none()) return PlausibilityValue::bottom();
  WorldSet num = pre.downward_closure(c);
  WorldSet cond = pre.downward_closure(v);
  // Class equality with the conditioning set means the event is as plausible
  // as the whole condition: the measure's top. (Plain set equality would make
  // the sum rule ill-defined once distinct events share a class.)
  if (num == cond) return PlausibilityValue::top();
  return PlausibilityValue::conditional(std::move(num), std::move(cond));
}

Relation compare_values(const PlausibilityValue& a, const PlausibilityValue& b) {
  if (a == b) return Relation::equal;
  if (a.is_bottom()) return Relation::less;
  if (b.is_bottom()) return Relation::greater;
  if (a.is_top()) return Relation::greater;
  if (b.is_top()) return Relation::less;
  if (a.conditioning() != b.conditioning()) return Relation::incomparable;
  bool ab = a.numerator().is_subset_of(b.numerator());
  bool ba = b.numerator().is_subset_of(a.numerator());
  if (ab && !ba) return Relation::less;
  if (ba && !ab) return Relation::greater;
  if (ab && ba) return Relation::equal;  // unreachable: equal handled above
  return Relation::incomparable;
}

bool check_independence(const Preorder& pre, const WorldSet& u, const WorldSet& v,
                        const WorldSet& v_cond) {
  if (v_cond.none())
    throw EmptyConditioningSet("conditioning on the empty set");
  WorldSet both = v & v_cond;
  if (both.none()) return true;
  return compare_values(conditional_plausibility(pre, u, both),
                        conditional_plausibility(pre, u, v_cond)) ==
         Relation::equal;
}

}  // namespace excm

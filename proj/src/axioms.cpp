#include "excm/axioms.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <utility>

namespace excm {

bool AxiomReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(),
                     [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult* AxiomReport::find(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return &a;
  return nullptr;
}

namespace {

using u64 = std::uint64_t;
constexpr std::size_t knone = ~std::size_t{0};
constexpr std::size_t hard_cap = 10;

std::string mask_to_string(u64 m) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 64; ++i)
    if (m >> i & 1) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

std::string value_to_string(const MaskValue& v) {
  switch (v.tag) {
    case MaskValue::Tag::bottom: return "bottom";
    case MaskValue::Tag::top: return "top";
    case MaskValue::Tag::conditional:
      return "d[" + mask_to_string(v.num) + "|" + mask_to_string(v.cond) + "]";
  }
  return "?";
}

Relation cmp(const MaskValue& a, const MaskValue& b) {
  if (a == b) return Relation::equal;
  if (a.tag == MaskValue::Tag::bottom) return Relation::less;
  if (b.tag == MaskValue::Tag::bottom) return Relation::greater;
  if (a.tag == MaskValue::Tag::top) return Relation::greater;
  if (b.tag == MaskValue::Tag::top) return Relation::less;
  if (a.cond != b.cond) return Relation::incomparable;
  bool ab = (a.num & ~b.num) == 0;
  bool ba = (b.num & ~a.num) == 0;
  if (ab && !ba) return Relation::less;
  if (ba && !ab) return Relation::greater;
  return ab ? Relation::equal : Relation::incomparable;
}

bool leq(const MaskValue& a, const MaskValue& b) {
  Relation r = cmp(a, b);
  return r == Relation::less || r == Relation::equal;
}

// Dense table of Pl(U|V) over all subset pairs of a small carrier.
struct Tables {
  std::size_t n = 0;
  u64 full = 0;
  std::vector<MaskValue> pl;  // index V * 2^n + U; rows with V = 0 unused

  [[nodiscard]] const MaskValue& at(u64 u, u64 v) const {
    return pl[(v << n) | u];
  }
};

Tables build_tables(const Preorder& pre) {
  Tables t;
  t.n = pre.size();
  std::size_t s = std::size_t{1} << t.n;
  t.full = s - 1;
  std::vector<u64> down(t.n, 0);
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t j = 0; j < t.n; ++j)
      if (pre.geq(i, j)) down[i] |= u64{1} << j;
  std::vector<u64> canon(s, 0);
  for (std::size_t m = 1; m < s; ++m) {
    std::size_t low = static_cast<std::size_t>(__builtin_ctzll(m));
    canon[m] = canon[m & (m - 1)] | down[low];
  }
  t.pl.resize(s * s);
  for (u64 v = 1; v <= t.full; ++v)
    for (u64 u = 0; u <= t.full; ++u) {
      MaskValue& out = t.pl[(v << t.n) | u];
      u64 c = u & v;
      if (c == 0) {
        out.tag = MaskValue::Tag::bottom;
      } else if (canon[c] == canon[v]) {
        out.tag = MaskValue::Tag::top;
      } else {
        out.tag = MaskValue::Tag::conditional;
        out.num = canon[c];
        out.cond = canon[v];
      }
    }
  return t;
}

Tables build_tables(std::size_t n, const MaskMeasure& measure) {
  Tables t;
  t.n = n;
  std::size_t s = std::size_t{1} << n;
  t.full = s - 1;
  t.pl.resize(s * s);
  for (u64 v = 1; v <= t.full; ++v)
    for (u64 u = 0; u <= t.full; ++u) t.pl[(v << n) | u] = measure(u, v);
  return t;
}

// First coarse index failing the predicate, or knone.
std::size_t first_failure(std::size_t count,
                          const std::function<bool(std::size_t)>& ok, Exec mode) {
  if (mode == Exec::serial) {
    for (std::size_t i = 0; i < count; ++i)
      if (!ok(i)) return i;
    return knone;
  }
  long long n = static_cast<long long>(count);
  long long bad = n;
#pragma omp parallel for reduction(min : bad) schedule(static)
  for (long long i = 0; i < n; ++i)
    if (!ok(i)) bad = std::min(bad, i);
  return bad == n ? knone : static_cast<std::size_t>(bad);
}

template <typename Fn>
void for_submasks(u64 mask, Fn&& fn) {
  for (u64 sub = mask;; sub = (sub - 1) & mask) {
    fn(sub);
    if (sub == 0) break;
  }
}

std::size_t pow_count(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// ---- individual axiom checks -------------------------------------------

AxiomResult check_cpl1(const Tables& t, Exec mode) {
  AxiomResult r{"CPl1"};
  r.instances = t.full;  // every nonempty V
  std::size_t bad = first_failure(
      t.full,
      [&](std::size_t i) {
        return t.at(0, static_cast<u64>(i) + 1).tag == MaskValue::Tag::bottom;
      },
      mode);
  if (bad != knone) {
    u64 v = static_cast<u64>(bad) + 1;
    r.passed = false;
    r.counterexample = "Pl({}|" + mask_to_string(v) +
                       ") = " + value_to_string(t.at(0, v));
  }
  return r;
}

AxiomResult check_cpl2(const Tables& t, Exec mode) {
  AxiomResult r{"CPl2"};
  r.instances = t.full;
  std::size_t bad = first_failure(
      t.full,
      [&](std::size_t i) {
        return t.at(t.full, static_cast<u64>(i) + 1).tag == MaskValue::Tag::top;
      },
      mode);
  if (bad != knone) {
    u64 v = static_cast<u64>(bad) + 1;
    r.passed = false;
    r.counterexample = "Pl(" + mask_to_string(t.full) + "|" + mask_to_string(v) +
                       ") = " + value_to_string(t.at(t.full, v));
  }
  return r;
}

AxiomResult check_cpl3(const Tables& t, Exec mode) {
  AxiomResult r{"CPl3"};
  r.instances = t.full * pow_count(3, t.n);
  auto scan = [&](u64 v, std::string* why) {
    bool good = true;
    for (u64 up = 0; up <= t.full && good; ++up)
      for_submasks(up, [&](u64 u) {
        if (!good || u == up) return;
        if (!leq(t.at(u, v), t.at(up, v))) {
          good = false;
          if (why)
            *why = "U=" + mask_to_string(u) + " subset of U'=" + mask_to_string(up) +
                   ", V=" + mask_to_string(v) + ": Pl(U|V)=" +
                   value_to_string(t.at(u, v)) + " not <= Pl(U'|V)=" +
                   value_to_string(t.at(up, v));
        }
      });
    return good;
  };
  std::size_t bad = first_failure(
      t.full, [&](std::size_t i) { return scan(static_cast<u64>(i) + 1, nullptr); },
      mode);
  if (bad != knone) {
    r.passed = false;
    scan(static_cast<u64>(bad) + 1, &r.counterexample);
  }
  return r;
}

AxiomResult check_cpl4(const Tables& t, Exec mode) {
  AxiomResult r{"CPl4"};
  r.instances = t.full * (t.full + 1);
  auto scan = [&](u64 v, std::string* why) {
    for (u64 u = 0; u <= t.full; ++u) {
      if (t.at(u, v) != t.at(u & v, v)) {
        if (why)
          *why = "U=" + mask_to_string(u) + ", V=" + mask_to_string(v) +
                 ": Pl(U|V)=" + value_to_string(t.at(u, v)) +
                 " != Pl(U∩V|V)=" + value_to_string(t.at(u & v, v));
        return false;
      }
    }
    return true;
  };
  std::size_t bad = first_failure(
      t.full, [&](std::size_t i) { return scan(static_cast<u64>(i) + 1, nullptr); },
      mode);
  if (bad != knone) {
    r.passed = false;
    scan(static_cast<u64>(bad) + 1, &r.counterexample);
  }
  return r;
}

using ValuePair = std::pair<MaskValue, MaskValue>;

ValuePair sorted_pair(MaskValue a, MaskValue b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

struct SumEntry {
  MaskValue result;
  u64 v1, v2, v;  // first instance producing the key
};

// Alg1: the value tuple (Pl(V1|V), Pl(V2|V)) of a disjoint pair must determine
// Pl(V1∪V2|V). Scans every instance into a map keyed by the tuple; also hands
// the resulting partial sum operation to the distributivity check.
AxiomResult check_alg1(const Tables& t, std::map<ValuePair, SumEntry>& oplus) {
  AxiomResult r{"Alg1-sum-well-defined"};
  for (u64 v = 1; v <= t.full; ++v) {
    for (u64 v1 = 0; v1 <= t.full; ++v1) {
      u64 rest = t.full & ~v1;
      bool stop = false;
      for_submasks(rest, [&](u64 v2) {
        if (stop) return;
        ++r.instances;
        ValuePair key = sorted_pair(t.at(v1, v), t.at(v2, v));
        MaskValue got = t.at(v1 | v2, v);
        auto [it, fresh] = oplus.try_emplace(key, SumEntry{got, v1, v2, v});
        if (!fresh && r.passed && !(it->second.result == got)) {
          r.passed = false;
          const SumEntry& e = it->second;
          r.counterexample =
              "tuple (" + value_to_string(key.first) + ", " +
              value_to_string(key.second) + "): union of " + mask_to_string(e.v1) +
              "," + mask_to_string(e.v2) + " given " + mask_to_string(e.v) +
              " gives " + value_to_string(e.result) + " but union of " +
              mask_to_string(v1) + "," + mask_to_string(v2) + " given " +
              mask_to_string(v) + " gives " + value_to_string(got);
          stop = true;
        }
      });
    }
  }
  return r;
}

struct ProdEntry {
  MaskValue result;
  u64 u, v, vp;
};

// Alg2: the value pair (Pl(U|V), Pl(V|V')) of a chain U ⊆ V ⊆ V' must
// determine Pl(U|V').
AxiomResult check_alg2(const Tables& t, std::map<ValuePair, ProdEntry>& otimes) {
  AxiomResult r{"Alg2-product-well-defined"};
  for (u64 vp = 0; vp <= t.full; ++vp) {
    for_submasks(vp, [&](u64 v) {
      if (v == 0) return;
      for_submasks(v, [&](u64 u) {
        ++r.instances;
        ValuePair key{t.at(u, v), t.at(v, vp)};
        MaskValue got = t.at(u, vp);
        auto [it, fresh] = otimes.try_emplace(key, ProdEntry{got, u, v, vp});
        if (!fresh && r.passed && !(it->second.result == got)) {
          r.passed = false;
          const ProdEntry& e = it->second;
          r.counterexample =
              "pair (" + value_to_string(key.first) + ", " +
              value_to_string(key.second) + "): chain " + mask_to_string(e.u) +
              " in " + mask_to_string(e.v) + " in " + mask_to_string(e.vp) +
              " gives " + value_to_string(e.result) + " but chain " +
              mask_to_string(u) + " in " + mask_to_string(v) + " in " +
              mask_to_string(vp) + " gives " + value_to_string(got);
        }
      });
    });
  }
  return r;
}

// Alg3 on the operations materialized by the two passes above: wherever every
// required combination lies in the respective domains,
// a⊗(b1⊕b2) must equal (a⊗b1)⊕(a⊗b2).
AxiomResult check_alg3(const std::map<ValuePair, SumEntry>& oplus,
                       const std::map<ValuePair, ProdEntry>& otimes) {
  AxiomResult r{"Alg3-distributivity"};
  std::map<MaskValue, std::vector<MaskValue>> firsts_by_second;
  for (const auto& [key, entry] : otimes) {
    auto& firsts = firsts_by_second[key.second];
    if (std::find(firsts.begin(), firsts.end(), key.first) == firsts.end())
      firsts.push_back(key.first);
  }
  for (const auto& [key, entry] : oplus) {
    const auto& [b1, b2] = key;
    const MaskValue& s = entry.result;
    auto it = firsts_by_second.find(b1);
    if (it == firsts_by_second.end()) continue;
    for (const MaskValue& a : it->second) {
      auto t1 = otimes.find({a, b1});
      auto t2 = otimes.find({a, b2});
      auto ts = otimes.find({a, s});
      if (t2 == otimes.end() || ts == otimes.end()) continue;
      auto dist = oplus.find(sorted_pair(t1->second.result, t2->second.result));
      if (dist == oplus.end()) continue;
      ++r.instances;
      if (r.passed && !(dist->second.result == ts->second.result)) {
        r.passed = false;
        r.counterexample =
            "a=" + value_to_string(a) + ", b1=" + value_to_string(b1) +
            ", b2=" + value_to_string(b2) + ": a⊗(b1⊕b2)=" +
            value_to_string(ts->second.result) + " but (a⊗b1)⊕(a⊗b2)=" +
            value_to_string(dist->second.result);
      }
    }
  }
  return r;
}

// Alg4 via chains sharing the factor c = Pl(V|V'): comparisons of products
// must already hold between the left factors.
AxiomResult check_alg4(const Tables& t, Exec mode) {
  AxiomResult r{"Alg4-cancellation"};
  std::vector<std::pair<u64, u64>> chains;  // (V', V) with V nonempty
  for (u64 vp = 0; vp <= t.full; ++vp)
    for_submasks(vp, [&](u64 v) {
      if (v == 0) return;
      chains.emplace_back(vp, v);
      r.instances += pow_count(4, static_cast<std::size_t>(__builtin_popcountll(v)));
    });
  auto scan = [&](std::size_t idx, std::string* why) {
    auto [vp, v] = chains[idx];
    bool good = true;
    for_submasks(v, [&](u64 u1) {
      if (!good) return;
      for_submasks(v, [&](u64 u2) {
        if (!good) return;
        if (leq(t.at(u1, vp), t.at(u2, vp)) && !leq(t.at(u1, v), t.at(u2, v))) {
          good = false;
          if (why)
            *why = "U1=" + mask_to_string(u1) + ", U2=" + mask_to_string(u2) +
                   ", V=" + mask_to_string(v) + ", V'=" + mask_to_string(vp) +
                   ": Pl(U1|V')=" + value_to_string(t.at(u1, vp)) +
                   " <= Pl(U2|V')=" + value_to_string(t.at(u2, vp)) +
                   " but Pl(U1|V)=" + value_to_string(t.at(u1, v)) +
                   " not <= Pl(U2|V)=" + value_to_string(t.at(u2, v));
        }
      });
    });
    return good;
  };
  std::size_t bad = first_failure(
      chains.size(), [&](std::size_t i) { return scan(i, nullptr); }, mode);
  if (bad != knone) {
    r.passed = false;
    scan(bad, &r.counterexample);
  }
  return r;
}

AxiomReport run_checks(const Tables& t, Exec mode) {
  AxiomReport report;
  report.worlds = t.n;
  report.axioms.push_back(check_cpl1(t, mode));
  report.axioms.push_back(check_cpl2(t, mode));
  report.axioms.push_back(check_cpl3(t, mode));
  report.axioms.push_back(check_cpl4(t, mode));
  std::map<ValuePair, SumEntry> oplus;
  std::map<ValuePair, ProdEntry> otimes;
  report.axioms.push_back(check_alg1(t, oplus));
  report.axioms.push_back(check_alg2(t, otimes));
  report.axioms.push_back(check_alg3(oplus, otimes));
  report.axioms.push_back(check_alg4(t, mode));
  return report;
}

void enforce_cap(std::size_t n, std::size_t cap) {
  if (n > cap || n > hard_cap)
    throw SpaceTooLarge("axiom check over " + std::to_string(n) +
                        " worlds exceeds the cap of " +
                        std::to_string(std::min(cap, hard_cap)));
}

}  // namespace

AxiomReport check_cpm_axioms(const Preorder& pre, std::size_t cap, Exec mode) {
  enforce_cap(pre.size(), cap);
  return run_checks(build_tables(pre), mode);
}

AxiomReport check_cpm_axioms(std::size_t n_worlds, const MaskMeasure& measure,
                             std::size_t cap, Exec mode) {
  enforce_cap(n_worlds, cap);
  return run_checks(build_tables(n_worlds, measure), mode);
}

}  // namespace excm

#include "excm/cost.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace excm {

namespace {

mpz_class pow2(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

}  // namespace

CostReport representation_cost(const CompactSpec& spec) {
  const Signature& sig = spec.model.signature();
  const auto& endo = sig.endogenous();

  CostReport r;
  r.n_endogenous = endo.size();
  r.all_binary = true;
  for (const Variable& v : endo)
    if (v.range.size() != 2) r.all_binary = false;

  std::size_t n = endo.size();
  if (r.all_binary && n > 0) {
    r.naive_bits = mpz_class(static_cast<unsigned long>(n)) *
                   pow2(static_cast<unsigned long>(n - 1));
    if (n - 1 < 64 &&
        (std::size_t{1} << (n - 1)) <= default_candidate_exponent_cap)
      r.candidates_per_variable = pow2(std::size_t{1} << (n - 1));
  }

  r.world_count = 1;
  for (const Variable& v : endo)
    r.world_count *= static_cast<unsigned long>(v.range.size());

  if (r.world_count <= default_factorial_cap) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), r.world_count.get_ui());
    r.order_count = f;
  }

  r.equation_values = 0;
  r.cpt_cells = 0;
  for (std::size_t i = 0; i < endo.size(); ++i) {
    const std::string& name = endo[i].name;
    if (spec.model.has_equation(static_cast<int>(i))) {
      mpz_class entries = 1;
      for (int p : spec.model.endo_parents(static_cast<int>(i)))
        entries *= static_cast<unsigned long>(endo[p].range.size());
      for (int p : spec.model.exo_parents(static_cast<int>(i)))
        entries *=
            static_cast<unsigned long>(sig.exogenous()[p].range.size());
      r.equation_values += entries;
    }
    // The plausibility table: one cell per value under each parent setting,
    // with override parents taking precedence over the equation's.
    mpz_class settings = 1;
    auto ov = spec.overrides.find(name);
    if (ov != spec.overrides.end()) {
      for (const std::string& p : ov->second.parents)
        settings *= static_cast<unsigned long>(sig.range_of(p).size());
    } else if (spec.model.has_equation(static_cast<int>(i))) {
      for (int p : spec.model.endo_parents(static_cast<int>(i)))
        settings *= static_cast<unsigned long>(endo[p].range.size());
    }
    r.cpt_cells += settings * static_cast<unsigned long>(endo[i].range.size());
  }

  for (const auto& chain : spec.chains)
    if (chain.size() > 1) r.declared_comparisons += chain.size() - 1;
  return r;
}

std::string scientific(const mpz_class& v, int digits) {
  if (v == 0) return "0";
  std::string s = v.get_str();
  std::string sign;
  if (s[0] == '-') {
    sign = "-";
    s.erase(s.begin());
  }
  if (digits < 1) digits = 1;
  std::string mant = s.substr(0, static_cast<std::size_t>(digits));
  while (mant.size() < static_cast<std::size_t>(digits)) mant.push_back('0');
  std::string out = sign + mant.substr(0, 1);
  if (digits > 1) out += "." + mant.substr(1);
  std::string exp = std::to_string(s.size() - 1);
  if (exp.size() < 2) exp.insert(exp.begin(), '0');
  return out + "e+" + exp;
}

}  // namespace excm

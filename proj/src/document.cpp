#include "excm/document.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace excm {

const Context* ModelDocument::find_context(const std::string& name) const {
  for (const auto& c : contexts)
    if (c.name == name) return &c.values;
  return nullptr;
}

namespace {

std::string range_to_string(const std::vector<Value>& range) {
  bool contiguous = range.size() > 1;
  for (std::size_t i = 1; i < range.size(); ++i)
    if (range[i] != range[i - 1] + 1) contiguous = false;
  if (contiguous)
    return std::to_string(range.front()) + ".." + std::to_string(range.back());
  std::string s = "[";
  for (std::size_t i = 0; i < range.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(range[i]);
  }
  return s + "]";
}

void print_variable_section(const char* header,
                            const std::vector<Variable>& vars,
                            std::string& out) {
  out += header;
  out += " {\n";
  for (const Variable& v : vars)
    out += "  " + v.name + ": " + range_to_string(v.range) + "\n";
  out += "}\n";
}

}  // namespace

std::string print_document(const ModelDocument& doc) {
  const CompactSpec& spec = doc.spec;
  const Signature& sig = spec.model.signature();
  std::string out;

  print_variable_section("variables", sig.endogenous(), out);
  if (!sig.exogenous().empty()) {
    out += "\n";
    print_variable_section("exogenous", sig.exogenous(), out);
  }

  bool any_equation = false;
  for (std::size_t i = 0; i < sig.endogenous().size(); ++i)
    if (spec.model.has_equation(static_cast<int>(i))) any_equation = true;
  if (any_equation) {
    out += "\nequations {\n";
    for (std::size_t i = 0; i < sig.endogenous().size(); ++i)
      if (spec.model.has_equation(static_cast<int>(i)))
        out += "  " + sig.endogenous()[i].name + " = " +
               expr_to_string(*spec.model.body(static_cast<int>(i))) + "\n";
    out += "}\n";
  }

  if (!spec.chains.empty()) {
    out += "\nplaus {\n";
    for (const auto& chain : spec.chains) {
      out += "  ";
      for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) out += " > ";
        out += cell_to_string(chain[i]);
      }
      out += "\n";
    }
    out += "}\n";
  }

  for (const auto& [name, ov] : spec.overrides) {
    out += "\noverride " + name + " {\n";
    if (!ov.parents.empty()) {
      out += "  parents: ";
      for (std::size_t i = 0; i < ov.parents.size(); ++i) {
        if (i) out += ", ";
        out += ov.parents[i];
      }
      out += "\n";
    }
    for (const OverrideRow& row : ov.rows)
      out += "  " + cell_to_string({name, row.value, row.given}) + " = " +
             row.atom + "\n";
    out += "}\n";
  }

  for (const NamedContext& c : doc.contexts) {
    out += "\ncontext " + c.name + " {\n";
    for (const auto& [var, v] : c.values)
      out += "  " + var + " = " + std::to_string(v) + "\n";
    out += "}\n";
  }
  return out;
}

}  // namespace excm

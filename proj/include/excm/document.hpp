#pragma once

#include <string>
#include <vector>

#include "excm/defaults.hpp"
#include "excm/model.hpp"

namespace excm {

struct NamedContext {
  std::string name;
  Context values;
  bool operator==(const NamedContext&) const = default;
};

// One model file: the succinct model description plus the named contexts
// queries run against.
struct ModelDocument {
  CompactSpec spec;
  std::vector<NamedContext> contexts;

  // Null when absent.
  [[nodiscard]] const Context* find_context(const std::string& name) const;
};

// Parses the model-file format. Sections appear in the fixed order
//   variables { X: 0..1 ... }   exogenous { ... }   equations { X = expr ... }
//   plaus { Pl(X = v | P = a) > ... }   override X { parents: P  rows }
//   context NAME { X = v ... }
// with later sections optional, `#` comments, and free whitespace. Every
// diagnostic is a ParseError carrying the 1-based source position.
[[nodiscard]] ModelDocument parse_document(const std::string& text);

// Canonical rendering: fixed section order, declarations in signature order,
// two-space indent. parse(print(doc)) reproduces doc, and printing is
// idempotent across that round trip.
[[nodiscard]] std::string print_document(const ModelDocument& doc);

}  // namespace excm

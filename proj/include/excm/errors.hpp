#pragma once

#include <stdexcept>
#include <string>

namespace excm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CyclicModel : Error {
  explicit CyclicModel(const std::string& msg) : Error(msg) {}
};

struct UnknownVariable : Error {
  explicit UnknownVariable(const std::string& msg) : Error(msg) {}
};

struct ValueOutOfRange : Error {
  explicit ValueOutOfRange(const std::string& msg) : Error(msg) {}
};

struct InvalidModel : Error {
  explicit InvalidModel(const std::string& msg) : Error(msg) {}
};

struct InvalidContext : Error {
  explicit InvalidContext(const std::string& msg) : Error(msg) {}
};

struct SpaceTooLarge : Error {
  explicit SpaceTooLarge(const std::string& msg) : Error(msg) {}
};

struct EmptyConditioningSet : Error {
  explicit EmptyConditioningSet(const std::string& msg) : Error(msg) {}
};

struct CyclicAtomOrder : Error {
  explicit CyclicAtomOrder(const std::string& msg) : Error(msg) {}
};

struct UnknownAtom : Error {
  explicit UnknownAtom(const std::string& msg) : Error(msg) {}
};

struct MissingTableEntry : Error {
  explicit MissingTableEntry(const std::string& msg) : Error(msg) {}
};

struct ExogenousParent : Error {
  explicit ExogenousParent(const std::string& msg) : Error(msg) {}
};

struct MissingRootTable : Error {
  explicit MissingRootTable(const std::string& msg) : Error(msg) {}
};

struct NoWitness : Error {
  explicit NoWitness(const std::string& msg) : Error(msg) {}
};

struct DuplicateDeclaration : Error {
  explicit DuplicateDeclaration(const std::string& msg) : Error(msg) {}
};

// Parse failure with a 1-based source position.
struct ParseError : Error {
  int line;
  int column;
  ParseError(int line_, int col_, const std::string& msg)
      : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
              ": " + msg),
        line(line_),
        column(col_) {}
};

}  // namespace excm

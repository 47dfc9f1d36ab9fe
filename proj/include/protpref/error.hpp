#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace protpref {

enum class ErrorKind {
  MalformedRecord,
  EmptyStructure,
  MissingAtom,
  BadConfig,
  BadTable,
  MixedProteins,
  UniverseMismatch,
  Incompatible,
  InvalidProfile,
  BadSpec,
  WrongMode,
  TooLarge,
  BadIndex,
  ZeroVector,
  AntipodalDegenerate,
  BudgetExceeded,
  InapplicableAxiom,
  TiesUnsupported,
  Schema,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace protpref

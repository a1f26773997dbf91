#pragma once

#include <stdexcept>
#include <string>

namespace totime {

enum class ErrorCode {
  EmptySet,
  PointNotInDomain,
  InvalidInterval,
  CutMismatch,
  CoverageGap,
  CoverageOverlap,
  StartMismatch,
  EmptyFamily,
  ActionNotInAlphabet,
  BadParameters,
  MissingEntry,
  UnknownName,
  SetOutsideSubgame,
  PrefixMismatch,
  MissingWitness,
  SearchSpaceTooLarge,
  SchemaError,
  UnknownStrategyKind,
  AlphabetMismatch,
  DomainMismatch,
  UnknownGallery,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace totime

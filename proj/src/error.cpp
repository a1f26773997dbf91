#include "totime/error.hpp"

namespace totime {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::PointNotInDomain: return "PointNotInDomain";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::CutMismatch: return "CutMismatch";
    case ErrorCode::CoverageGap: return "CoverageGap";
    case ErrorCode::CoverageOverlap: return "CoverageOverlap";
    case ErrorCode::StartMismatch: return "StartMismatch";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::ActionNotInAlphabet: return "ActionNotInAlphabet";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::MissingEntry: return "MissingEntry";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::SetOutsideSubgame: return "SetOutsideSubgame";
    case ErrorCode::PrefixMismatch: return "PrefixMismatch";
    case ErrorCode::MissingWitness: return "MissingWitness";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownStrategyKind: return "UnknownStrategyKind";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::UnknownGallery: return "UnknownGallery";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace totime

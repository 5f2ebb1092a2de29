#include "sepchoice/error.hpp"

namespace sepchoice {

const char* err_name(Err code) {
  switch (code) {
    case Err::EmptyMenu: return "EmptyMenu";
    case Err::DuplicateAlternative: return "DuplicateAlternative";
    case Err::UnknownAlternative: return "UnknownAlternative";
    case Err::DuplicateMenu: return "DuplicateMenu";
    case Err::NoDms: return "NoDms";
    case Err::EmptyAllowedSet: return "EmptyAllowedSet";
    case Err::BadIndex: return "BadIndex";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NotChshScenario: return "NotChshScenario";
    case Err::NotGenerating: return "NotGenerating";
    case Err::NotTwoDms: return "NotTwoDms";
    case Err::BadAlpha: return "BadAlpha";
    case Err::BadWeights: return "BadWeights";
    case Err::TooLarge: return "TooLarge";
    case Err::ConeMismatch: return "ConeMismatch";
    case Err::Parse: return "Parse";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace sepchoice

#pragma once

#include <stdexcept>
#include <string>

namespace sepchoice {

// Every precondition failure in the library throws Error with one of these codes.
enum class Err {
  EmptyMenu,
  DuplicateAlternative,
  UnknownAlternative,
  DuplicateMenu,
  NoDms,
  EmptyAllowedSet,
  BadIndex,
  DimensionMismatch,
  NotChshScenario,
  NotGenerating,
  NotTwoDms,
  BadAlpha,
  BadWeights,
  TooLarge,
  ConeMismatch,
  Parse,
  Internal,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Err code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace sepchoice

#pragma once

#include <optional>
#include <string>

#include "sepchoice/extension.hpp"
#include "sepchoice/rule.hpp"
#include "sepchoice/separability.hpp"

namespace sepchoice {

struct ChshReport {
  CorrelatorTable table;
  std::optional<ChshViolation> violation;
};
ChshReport run_chsh(const JointChoiceRule& rule);

struct ExtensionReport {
  std::size_t k = 1;
  bool on_average = false;
  FeasibilityResult result;
};

// Everything one invocation decided about one input, ready to serialize.
// `seconds` is opt-in; leaving it unset keeps output bytes identical across
// runs with the same input and flags.
struct RunReport {
  std::string digest;
  AllowedSets allowed;
  Classification classification;
  std::optional<ChshReport> chsh;
  std::optional<ExtensionReport> extension;
  std::optional<double> seconds;
};

// Process exit code contract: Separable 0, Entangled 3, Signaling 4,
// RestrictedViolation 5, Invalid 2.
int exit_code_for(Label label);

// "E(0,0) + E(0,1) + E(1,0) - E(1,1) <= 2" for bound index 0, and so on.
std::string bound_inequality_text(std::size_t bound);

// Deterministic JSON (sorted keys) and a human-readable rendering that quotes
// any violated inequality symbolically.
std::string report_to_json(const RunReport& report);
std::string report_to_text(const RunReport& report, const JointChoiceRule& rule);

// Re-checks a saved JSON report against rule file bytes: digest, label
// evidence, correlators, extension certificates. Returns an empty string when
// everything holds, otherwise a description of the first mismatch.
std::string verify_report_json(const std::string& report_text, const std::string& rule_bytes);

}  // namespace sepchoice

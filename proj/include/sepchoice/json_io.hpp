#pragma once

#include <cstdint>
#include <string>

#include "sepchoice/rule.hpp"

namespace sepchoice {

// External formats. A space file is {"dms":[{"alternatives":[...],
// "menus":[[...],...]},...]}; a rule file wraps a space with {"space":...,
// "rule":[{"menus":[j1,...,jT],"probs":{"a1|...|aT":"p/q",...}},...]}.
// Menu indices are 0-based; probabilities are exact rational strings. Every
// menu path must appear exactly once and every choice path of its menu path
// must have a key. Labels may not be empty or contain '|'.
// Schema violations throw Err::Parse; label and menu defects surface through
// validate_space.

ChoiceSpace parse_space_json(const std::string& text);
JointChoiceRule parse_rule_json(const std::string& text);

std::string space_to_json(const ChoiceSpace& space);
std::string rule_to_json(const JointChoiceRule& rule);

// '|'-joined alternative labels along a choice path, in DM order.
std::string choice_key(const ChoiceSpace& space, const MenuPath& mp, const ChoicePath& cp);

// 64-bit FNV-1a of the raw bytes, formatted "fnv1a:<16 hex digits>".
std::string input_digest(const std::string& bytes);

}  // namespace sepchoice

#pragma once

#include <string>

#include "lenseq/sequence.hpp"
#include "lenseq/underground.hpp"

namespace lenseq {

// Text forms. All parsers ignore incidental whitespace and throw ParseError
// with the offending text on anything malformed.

std::string format_seed(const Seed& seed);      // "a,b,c"
Seed parse_seed(const std::string& text);

std::string format_symbol(const UndergroundSymbol& sym);  // "^s(p,q)^k"
UndergroundSymbol parse_symbol(const std::string& text);

std::string format_label(const SeedLabel& label);  // "[a,b;k]"
SeedLabel parse_label(const std::string& text);

// JSON forms carry every number as a string so precision never leaks.
// Window objects: {"alpha", "beta", "origin_index", "terms"}; factor
// windows: {"s", "k", "origin_index", "terms"}. origin_index is the
// position of the index-zero term inside terms.

std::string window_to_json(const SequenceWindow& w, int indent = 2);
SequenceWindow window_from_json(const std::string& text);

std::string underground_to_json(const UndergroundWindow& f, int indent = 2);
UndergroundWindow underground_from_json(const std::string& text);

}  // namespace lenseq

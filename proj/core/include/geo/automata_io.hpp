#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geo/automata.hpp"

namespace geo {

/// Serialized automaton format, version 1. Transitions of a Dfa are a list
/// of target rows (one target per symbol); pair automata list labeled edges
/// whose labels are [left, right] with null standing for PAD.
inline constexpr int kFormatVersion = 1;

std::string to_json(const Dfa& d);
Dfa dfa_from_json(std::string_view text);

/// `labels`, when given, carries one string per state (word-difference labels).
std::string to_json(const PairAutomaton& p, const std::vector<std::string>* labels = nullptr);
PairAutomaton pair_from_json(std::string_view text, std::vector<std::string>* labels = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace geo

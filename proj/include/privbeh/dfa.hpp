#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string_view>
#include <vector>

#include "privbeh/regex.hpp"

namespace privbeh {

/// Deterministic automaton with a partial transition function; a missing
/// entry denotes the implicit dead state. States are dense indices.
struct Dfa {
  std::size_t state_count = 0;
  std::size_t initial = 0;
  /// Per state: symbol -> successor.
  std::vector<std::map<char, std::size_t>> delta;
  std::set<std::size_t> accepting;

  bool accepts(std::string_view word) const;
};

/// Subset construction over the reachable part; deterministic state order
/// (breadth-first, symbols in kAlphabet order).
Dfa determinize(const Nfa& nfa);

/// Hopcroft partition refinement followed by trimming to live states and a
/// canonical breadth-first renumbering (symbols in kAlphabet order). The
/// initial state is kept even when the language is empty. Output states are
/// numbered 0..n-1 in BFS order with initial = 0.
Dfa minimize(const Dfa& dfa);

/// Restricts to states reachable from the initial state that can still reach
/// an accepting state; the initial state always survives.
Dfa trim(const Dfa& dfa);

/// BFS renumbering in kAlphabet symbol order; unreachable states are dropped.
Dfa canonical_form(const Dfa& dfa);

/// True iff the reachable parts are graph-isomorphic (equal canonical forms).
/// For minimal DFAs this coincides with language equality.
bool dfa_isomorphic(const Dfa& lhs, const Dfa& rhs);

/// Every word of the DFA's (finite) language, sorted; SynthesisError if the
/// language is infinite or contains a word longer than max_length.
std::vector<std::string> dfa_language(const Dfa& dfa, std::size_t max_length);

}  // namespace privbeh

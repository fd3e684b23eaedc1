#include "privbeh/dfa.hpp"

#include <algorithm>
#include <deque>

namespace privbeh {

bool Dfa::accepts(std::string_view word) const {
  std::size_t state = initial;
  for (const char symbol : word) {
    const auto it = delta[state].find(symbol);
    if (it == delta[state].end()) return false;
    state = it->second;
  }
  return accepting.count(state) > 0;
}

Dfa determinize(const Nfa& nfa) {
  Dfa dfa;
  std::map<std::set<std::size_t>, std::size_t> index_of;
  std::deque<std::set<std::size_t>> frontier;

  const auto intern = [&](const std::set<std::size_t>& subset) {
    const auto it = index_of.find(subset);
    if (it != index_of.end()) return it->second;
    const std::size_t index = dfa.state_count++;
    dfa.delta.emplace_back();
    if (std::any_of(subset.begin(), subset.end(),
                    [&](std::size_t s) { return nfa.accepting.count(s) > 0; })) {
      dfa.accepting.insert(index);
    }
    index_of.emplace(subset, index);
    frontier.push_back(subset);
    return index;
  };

  dfa.initial = intern(nfa.epsilon_closure({nfa.initial}));
  while (!frontier.empty()) {
    const std::set<std::size_t> subset = frontier.front();
    frontier.pop_front();
    const std::size_t from = index_of.at(subset);
    for (const char symbol : kAlphabet) {
      std::set<std::size_t> moved;
      for (const std::size_t state : subset) {
        const auto it = nfa.delta[state].find(symbol);
        if (it == nfa.delta[state].end()) continue;
        moved.insert(it->second.begin(), it->second.end());
      }
      if (moved.empty()) continue;
      dfa.delta[from][symbol] = intern(nfa.epsilon_closure(moved));
    }
  }
  return dfa;
}

namespace {

std::vector<bool> reachable_states(const Dfa& dfa) {
  std::vector<bool> seen(dfa.state_count, false);
  std::deque<std::size_t> frontier{dfa.initial};
  seen[dfa.initial] = true;
  while (!frontier.empty()) {
    const std::size_t state = frontier.front();
    frontier.pop_front();
    for (const auto& [symbol, target] : dfa.delta[state]) {
      if (!seen[target]) {
        seen[target] = true;
        frontier.push_back(target);
      }
    }
  }
  return seen;
}

std::vector<bool> coreachable_states(const Dfa& dfa) {
  std::vector<std::vector<std::size_t>> reverse(dfa.state_count);
  for (std::size_t state = 0; state < dfa.state_count; ++state) {
    for (const auto& [symbol, target] : dfa.delta[state]) {
      reverse[target].push_back(state);
    }
  }
  std::vector<bool> seen(dfa.state_count, false);
  std::deque<std::size_t> frontier;
  for (const std::size_t state : dfa.accepting) {
    seen[state] = true;
    frontier.push_back(state);
  }
  while (!frontier.empty()) {
    const std::size_t state = frontier.front();
    frontier.pop_front();
    for (const std::size_t pred : reverse[state]) {
      if (!seen[pred]) {
        seen[pred] = true;
        frontier.push_back(pred);
      }
    }
  }
  return seen;
}

Dfa rebuild_keeping(const Dfa& dfa, const std::vector<bool>& keep) {
  std::vector<std::size_t> renumber(dfa.state_count, 0);
  Dfa out;
  for (std::size_t state = 0; state < dfa.state_count; ++state) {
    if (keep[state]) {
      renumber[state] = out.state_count++;
      out.delta.emplace_back();
    }
  }
  out.initial = renumber[dfa.initial];
  for (std::size_t state = 0; state < dfa.state_count; ++state) {
    if (!keep[state]) continue;
    for (const auto& [symbol, target] : dfa.delta[state]) {
      if (keep[target]) out.delta[renumber[state]][symbol] = renumber[target];
    }
    if (dfa.accepting.count(state)) out.accepting.insert(renumber[state]);
  }
  return out;
}

}  // namespace

Dfa trim(const Dfa& dfa) {
  const std::vector<bool> reachable = reachable_states(dfa);
  const std::vector<bool> coreachable = coreachable_states(dfa);
  std::vector<bool> keep(dfa.state_count, false);
  for (std::size_t state = 0; state < dfa.state_count; ++state) {
    keep[state] = reachable[state] && coreachable[state];
  }
  keep[dfa.initial] = true;  // even a dead initial state must survive
  return rebuild_keeping(dfa, keep);
}

Dfa canonical_form(const Dfa& dfa) {
  std::vector<std::size_t> renumber(dfa.state_count, SIZE_MAX);
  std::vector<std::size_t> order;
  std::deque<std::size_t> frontier{dfa.initial};
  renumber[dfa.initial] = 0;
  order.push_back(dfa.initial);
  while (!frontier.empty()) {
    const std::size_t state = frontier.front();
    frontier.pop_front();
    for (const char symbol : kAlphabet) {
      const auto it = dfa.delta[state].find(symbol);
      if (it == dfa.delta[state].end() || renumber[it->second] != SIZE_MAX) continue;
      renumber[it->second] = order.size();
      order.push_back(it->second);
      frontier.push_back(it->second);
    }
  }
  Dfa out;
  out.state_count = order.size();
  out.initial = 0;
  out.delta.resize(order.size());
  for (std::size_t index = 0; index < order.size(); ++index) {
    const std::size_t state = order[index];
    for (const auto& [symbol, target] : dfa.delta[state]) {
      out.delta[index][symbol] = renumber[target];
    }
    if (dfa.accepting.count(state)) out.accepting.insert(index);
  }
  return out;
}

bool dfa_isomorphic(const Dfa& lhs, const Dfa& rhs) {
  const Dfa a = canonical_form(lhs);
  const Dfa b = canonical_form(rhs);
  return a.state_count == b.state_count && a.initial == b.initial &&
         a.delta == b.delta && a.accepting == b.accepting;
}

Dfa minimize(const Dfa& dfa) {
  const Dfa trimmed = trim(dfa);
  const std::size_t n = trimmed.state_count;
  const std::size_t dead = n;  // virtual sink completing the partial function

  // Reverse transition lists including the dead state.
  std::map<char, std::vector<std::vector<std::size_t>>> reverse;
  for (const char symbol : kAlphabet) {
    reverse[symbol].assign(n + 1, {});
  }
  for (std::size_t state = 0; state < n; ++state) {
    for (const char symbol : kAlphabet) {
      const auto it = trimmed.delta[state].find(symbol);
      const std::size_t target = it == trimmed.delta[state].end() ? dead : it->second;
      reverse[symbol][target].push_back(state);
    }
  }
  for (const char symbol : kAlphabet) {
    reverse[symbol][dead].push_back(dead);
  }

  // Hopcroft refinement over state classes 0..n (incl. the dead state).
  std::vector<std::size_t> class_of(n + 1, 0);
  std::vector<std::set<std::size_t>> classes;
  {
    std::set<std::size_t> rejecting;
    for (std::size_t state = 0; state < n; ++state) {
      if (!trimmed.accepting.count(state)) rejecting.insert(state);
    }
    rejecting.insert(dead);
    classes.push_back(trimmed.accepting);
    classes.push_back(std::move(rejecting));
    for (const std::size_t state : classes[0]) class_of[state] = 0;
    for (const std::size_t state : classes[1]) class_of[state] = 1;
    if (classes[0].empty()) {
      classes.erase(classes.begin());
      for (auto& c : class_of) c = 0;
    }
  }

  std::deque<std::pair<std::size_t, char>> worklist;
  for (std::size_t index = 0; index < classes.size(); ++index) {
    for (const char symbol : kAlphabet) {
      worklist.emplace_back(index, symbol);
    }
  }

  while (!worklist.empty()) {
    const auto [splitter, symbol] = worklist.front();
    worklist.pop_front();

    // States with a `symbol` transition into the splitter class.
    std::set<std::size_t> incoming;
    for (const std::size_t target : classes[splitter]) {
      const auto& preds = reverse[symbol][target];
      incoming.insert(preds.begin(), preds.end());
    }
    if (incoming.empty()) continue;

    // Classes cut by `incoming`, collected before mutation.
    std::map<std::size_t, std::set<std::size_t>> cuts;
    for (const std::size_t state : incoming) {
      cuts[class_of[state]].insert(state);
    }
    for (const auto& [index, inside] : cuts) {
      if (inside.size() == classes[index].size()) continue;
      std::set<std::size_t> outside;
      for (const std::size_t state : classes[index]) {
        if (!inside.count(state)) outside.insert(state);
      }
      const std::size_t fresh = classes.size();
      const bool keep_smaller_inside = inside.size() <= outside.size();
      classes[index] = keep_smaller_inside ? outside : inside;
      classes.push_back(keep_smaller_inside ? inside : outside);
      for (const std::size_t state : classes[fresh]) class_of[state] = fresh;
      for (const char sym : kAlphabet) {
        worklist.emplace_back(fresh, sym);
      }
    }
  }

  // Quotient automaton; the dead state's class is dropped (all its members
  // are non-live, and live states were trimmed to exclude them).
  const std::size_t dead_class = class_of[dead];
  std::vector<std::size_t> quotient_index(classes.size(), SIZE_MAX);
  Dfa quotient;
  for (std::size_t index = 0; index < classes.size(); ++index) {
    if (index == dead_class) continue;
    quotient_index[index] = quotient.state_count++;
    quotient.delta.emplace_back();
  }
  if (quotient.state_count == 0) {
    // Empty language: everything merged with dead; keep a lone initial state.
    quotient.state_count = 1;
    quotient.delta.emplace_back();
    quotient.initial = 0;
    return quotient;
  }
  quotient.initial = quotient_index[class_of[trimmed.initial]];
  for (std::size_t index = 0; index < classes.size(); ++index) {
    if (index == dead_class || classes[index].empty()) continue;
    const std::size_t representative = *classes[index].begin();
    for (const auto& [symbol, target] : trimmed.delta[representative]) {
      const std::size_t target_class = class_of[target];
      if (target_class == dead_class) continue;
      quotient.delta[quotient_index[index]][symbol] = quotient_index[target_class];
    }
    if (trimmed.accepting.count(representative)) {
      quotient.accepting.insert(quotient_index[index]);
    }
  }
  return canonical_form(quotient);
}

namespace {

void collect_words(const Dfa& dfa, std::size_t state, std::string& prefix,
                   std::size_t max_length, std::vector<std::string>& out) {
  if (dfa.accepting.count(state)) out.push_back(prefix);
  if (prefix.size() == max_length) {
    if (!dfa.delta[state].empty()) {
      throw SynthesisError("DFA accepts a word longer than " +
                           std::to_string(max_length) + " symbols");
    }
    return;
  }
  for (const auto& [symbol, target] : dfa.delta[state]) {
    prefix.push_back(symbol);
    collect_words(dfa, target, prefix, max_length, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::string> dfa_language(const Dfa& dfa, std::size_t max_length) {
  // A trimmed DFA over a finite language is acyclic, so the recursion depth
  // is bounded; a cycle would produce a too-long word and error out above.
  const Dfa trimmed = trim(dfa);
  std::vector<std::string> words;
  std::string prefix;
  collect_words(trimmed, trimmed.initial, prefix, max_length, words);
  std::sort(words.begin(), words.end());
  return words;
}

}  // namespace privbeh

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "privbeh/automaton.hpp"
#include "privbeh/dfa.hpp"
#include "privbeh/factors.hpp"
#include "privbeh/regex.hpp"

namespace privbeh {

/// Fixed bijections between factor values, alphabet symbols and channel
/// names: h/f/r carry the information type, A-D the trust source, a-d the
/// recipient role.
struct SymbolMapping {
  char info_symbol(InformationType value) const;
  char trust_symbol(TrustSource value) const;
  char recipient_symbol(RecipientRole value) const;

  /// Channel carrying a symbol: h -> health, A -> t_family, a -> r_family...
  std::string channel_of(char symbol) const;

  /// Broadcast channel closing each disclosure cycle.
  std::string done_channel() const { return "done"; }
};

/// Three-symbol word [info][trust][recipient] for a shared record.
std::string encode_record(const DisclosureRecord& record, const SymbolMapping& mapping);
std::string encode_triple(const FactorTriple& triple, const SymbolMapping& mapping);

/// Plain union of the words as concatenations, in first-occurrence order
/// (duplicates dropped); EmptyLanguage for no words.
Regex build_union_regex(const std::vector<std::string>& words);

/// Minimal DFA for a user's shared words: regex -> Thompson NFA -> subset
/// construction -> Hopcroft minimization.
Dfa words_to_min_dfa(const std::vector<std::string>& words);

/// Behavioral automaton from a minimal DFA of 3-symbol words: committed Idle
/// (initial) and Share locations, intermediates s1..sN in BFS order, one
/// Emit(channel) edge per DFA transition, and a Share -> Idle edge emitting
/// the broadcast `done`. An empty-language DFA yields just Idle.
Automaton dfa_to_behavioral(const Dfa& dfa, const SymbolMapping& mapping,
                            std::string process_name);

enum class ObserverKind { InfoType, TrustSource, RecipientRole };

/// Observer spoke location name for a factor value, as written in queries:
/// Health, Self_Search, Online_Service, ...
std::string spoke_name(InformationType value);
std::string spoke_name(TrustSource value);
std::string spoke_name(RecipientRole value);

/// Hub-and-spoke observer: hub -> spoke on the factor channels, spoke -> hub
/// on `done`. Declares the alias spellings queries may use (info_type for
/// the process, Online for the Online_Service spoke).
Automaton build_observer(ObserverKind kind, const SymbolMapping& mapping);

/// Returns a copy with guard/update/select installed on the unique
/// source -> target edge; the edge must exist and be undecorated.
Automaton attach_guard(const Automaton& automaton, std::string_view source,
                       std::string_view target, GuardExpr guard, UpdateStmt update,
                       std::optional<SelectBinding> select = std::nullopt);

/// Returns a copy with one extra edge; rejects an exact duplicate.
Automaton add_edge(const Automaton& automaton, std::string_view source,
                   std::string_view target, GuardExpr guard, SyncAction sync,
                   UpdateStmt update = {});

/// The twelve channels of the composed model: eleven binary factor channels
/// plus the broadcast `done`.
std::vector<Channel> standard_channels(const SymbolMapping& mapping);

/// Composes [behavioral, observers...] and validates the result.
Network assemble_network(Automaton behavioral, std::vector<Automaton> observers,
                         std::vector<VariableDecl> variables,
                         std::vector<Channel> channels);

/// Records for one user, in file order.
std::vector<DisclosureRecord> records_for_user(const std::vector<DisclosureRecord>& records,
                                               std::string_view user_id);

/// Shared words for one user, in record order without duplicates.
std::vector<std::string> shared_words(const std::vector<DisclosureRecord>& records,
                                      std::string_view user_id,
                                      const SymbolMapping& mapping);

/// One-shot pipeline: filter the user's shared records, synthesize the
/// behavioral automaton, attach the three observers, declare the standard
/// channels. SynthesisError when the user has no records at all.
Network synthesize_network(const std::vector<DisclosureRecord>& records,
                           std::string_view user_id);

}  // namespace privbeh

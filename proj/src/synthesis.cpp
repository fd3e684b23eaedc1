#include "privbeh/synthesis.hpp"

#include <algorithm>
#include <map>

namespace privbeh {

char SymbolMapping::info_symbol(InformationType value) const {
  switch (value) {
    case InformationType::Health: return 'h';
    case InformationType::Finance: return 'f';
    case InformationType::Relationship: return 'r';
  }
  throw SynthesisError("invalid information type");
}

char SymbolMapping::trust_symbol(TrustSource value) const {
  switch (value) {
    case TrustSource::Family: return 'A';
    case TrustSource::Friend: return 'B';
    case TrustSource::Expert: return 'C';
    case TrustSource::SelfSearch: return 'D';
  }
  throw SynthesisError("invalid trust source");
}

char SymbolMapping::recipient_symbol(RecipientRole value) const {
  switch (value) {
    case RecipientRole::Family: return 'a';
    case RecipientRole::Friend: return 'b';
    case RecipientRole::Colleague: return 'c';
    case RecipientRole::OnlineService: return 'd';
  }
  throw SynthesisError("invalid recipient role");
}

std::string SymbolMapping::channel_of(char symbol) const {
  switch (symbol) {
    case 'h': return "health";
    case 'f': return "finance";
    case 'r': return "relationship";
    case 'A': return "t_family";
    case 'B': return "t_friend";
    case 'C': return "t_expert";
    case 'D': return "t_self";
    case 'a': return "r_family";
    case 'b': return "r_friend";
    case 'c': return "r_colleague";
    case 'd': return "r_online";
  }
  throw SynthesisError(std::string("symbol '") + symbol + "' is not in the alphabet");
}

std::string encode_triple(const FactorTriple& triple, const SymbolMapping& mapping) {
  return {mapping.info_symbol(triple.info_type), mapping.trust_symbol(triple.trust_source),
          mapping.recipient_symbol(triple.recipient_role)};
}

std::string encode_record(const DisclosureRecord& record, const SymbolMapping& mapping) {
  if (!record.shared) {
    throw SynthesisError("record " + record.user_id + "/" +
                         std::to_string(record.scenario_id) +
                         " was not shared; only positive behavior is encoded");
  }
  return encode_triple(record.triple(), mapping);
}

Regex build_union_regex(const std::vector<std::string>& words) {
  std::vector<std::string> unique;
  for (const auto& word : words) {
    if (std::find(unique.begin(), unique.end(), word) == unique.end()) {
      unique.push_back(word);
    }
  }
  if (unique.empty()) return Regex::empty_language();
  Regex result = Regex::word(unique.front());
  for (std::size_t i = 1; i < unique.size(); ++i) {
    result = Regex::union_of(std::move(result), Regex::word(unique[i]));
  }
  return result;
}

Dfa words_to_min_dfa(const std::vector<std::string>& words) {
  return minimize(determinize(compile_regex(build_union_regex(words))));
}

Automaton dfa_to_behavioral(const Dfa& dfa, const SymbolMapping& mapping,
                            std::string process_name) {
  // Canonical BFS numbering makes the s1..sN names deterministic; the word
  // enumeration bounds the language to 3-symbol words as a side effect.
  const Dfa canon = canonical_form(dfa);
  for (const auto& word : dfa_language(canon, 3)) {
    if (word.size() != 3) {
      throw SynthesisError("behavioral synthesis requires 3-symbol words, got \"" +
                           word + "\"");
    }
  }
  if (canon.accepting.size() > 1) {
    throw SynthesisError("minimal DFA of 3-symbol words cannot have " +
                         std::to_string(canon.accepting.size()) + " accepting states");
  }

  Automaton automaton;
  automaton.name = std::move(process_name);

  const auto make_location = [](std::string name, bool initial, bool committed) {
    Location location;
    location.name = std::move(name);
    location.initial = initial;
    location.committed = committed;
    return location;
  };

  // Location order: Idle, s1..sN, Share; DFA state -> location index.
  std::vector<std::size_t> location_of(canon.state_count, 0);
  automaton.locations.push_back(make_location("Idle", true, true));
  for (std::size_t state = 1; state < canon.state_count; ++state) {
    if (canon.accepting.count(state)) continue;
    location_of[state] = automaton.locations.size();
    automaton.locations.push_back(
        make_location("s" + std::to_string(location_of[state]), false, false));
  }
  if (!canon.accepting.empty()) {
    const std::size_t share_state = *canon.accepting.begin();
    location_of[share_state] = automaton.locations.size();
    automaton.locations.push_back(make_location("Share", false, true));
  }

  for (std::size_t state = 0; state < canon.state_count; ++state) {
    for (const char symbol : kAlphabet) {
      const auto it = canon.delta[state].find(symbol);
      if (it == canon.delta[state].end()) continue;
      Edge edge;
      edge.source = location_of[state];
      edge.target = location_of[it->second];
      edge.sync = SyncAction::emit(mapping.channel_of(symbol));
      automaton.edges.push_back(std::move(edge));
    }
  }
  if (!canon.accepting.empty()) {
    Edge back;
    back.source = location_of[*canon.accepting.begin()];
    back.target = 0;
    back.sync = SyncAction::emit(mapping.done_channel());
    automaton.edges.push_back(std::move(back));
  }
  return automaton;
}

std::string spoke_name(InformationType value) {
  switch (value) {
    case InformationType::Health: return "Health";
    case InformationType::Finance: return "Finance";
    case InformationType::Relationship: return "Relationship";
  }
  throw SynthesisError("invalid information type");
}

std::string spoke_name(TrustSource value) {
  switch (value) {
    case TrustSource::Family: return "Family";
    case TrustSource::Friend: return "Friend";
    case TrustSource::Expert: return "Expert";
    case TrustSource::SelfSearch: return "Self_Search";
  }
  throw SynthesisError("invalid trust source");
}

std::string spoke_name(RecipientRole value) {
  switch (value) {
    case RecipientRole::Family: return "Family";
    case RecipientRole::Friend: return "Friend";
    case RecipientRole::Colleague: return "Colleague";
    case RecipientRole::OnlineService: return "Online_Service";
  }
  throw SynthesisError("invalid recipient role");
}

Automaton build_observer(ObserverKind kind, const SymbolMapping& mapping) {
  Automaton automaton;
  // (spoke name, aliases, factor channel) per spoke, hub first.
  struct Spoke {
    std::string name;
    std::vector<std::string> aliases;
    char symbol;
  };
  std::vector<Spoke> spokes;
  const auto hub_location = [](std::string name) {
    Location location;
    location.name = std::move(name);
    location.initial = true;
    return location;
  };
  switch (kind) {
    case ObserverKind::InfoType:
      automaton.name = "information_type";
      automaton.aliases = {"info_type"};
      automaton.locations.push_back(hub_location("Information_Type"));
      for (const InformationType value : kInformationTypes) {
        spokes.push_back({spoke_name(value), {}, mapping.info_symbol(value)});
      }
      break;
    case ObserverKind::TrustSource:
      automaton.name = "trust_source";
      automaton.locations.push_back(hub_location("Trust_Source"));
      for (const TrustSource value : kTrustSources) {
        spokes.push_back({spoke_name(value), {}, mapping.trust_symbol(value)});
      }
      break;
    case ObserverKind::RecipientRole:
      automaton.name = "recipient_role";
      automaton.locations.push_back(hub_location("Recipient_Role"));
      for (const RecipientRole value : kRecipientRoles) {
        // The source data's shorthand for this spoke is plain `Online`.
        std::vector<std::string> aliases;
        if (value == RecipientRole::OnlineService) aliases.push_back("Online");
        spokes.push_back(
            {spoke_name(value), std::move(aliases), mapping.recipient_symbol(value)});
      }
      break;
  }

  for (const Spoke& spoke : spokes) {
    Location location;
    location.name = spoke.name;
    location.aliases = spoke.aliases;
    automaton.locations.push_back(std::move(location));
  }
  for (std::size_t i = 0; i < spokes.size(); ++i) {
    Edge in;
    in.source = 0;
    in.target = i + 1;
    in.sync = SyncAction::receive(mapping.channel_of(spokes[i].symbol));
    automaton.edges.push_back(std::move(in));
  }
  for (std::size_t i = 0; i < spokes.size(); ++i) {
    Edge out;
    out.source = i + 1;
    out.target = 0;
    out.sync = SyncAction::receive(mapping.done_channel());
    automaton.edges.push_back(std::move(out));
  }
  return automaton;
}

namespace {

std::size_t require_location(const Automaton& automaton, std::string_view name) {
  const auto index = automaton.find_location(name);
  if (!index) {
    throw SynthesisError("process '" + automaton.name + "' has no location '" +
                         std::string(name) + "'");
  }
  return *index;
}

}  // namespace

Automaton attach_guard(const Automaton& automaton, std::string_view source,
                       std::string_view target, GuardExpr guard, UpdateStmt update,
                       std::optional<SelectBinding> select) {
  const std::size_t from = require_location(automaton, source);
  const std::size_t to = require_location(automaton, target);
  Automaton result = automaton;
  std::size_t matches = 0;
  std::size_t match_index = 0;
  for (std::size_t i = 0; i < result.edges.size(); ++i) {
    if (result.edges[i].source == from && result.edges[i].target == to) {
      ++matches;
      match_index = i;
    }
  }
  if (matches == 0) {
    throw SynthesisError("no edge " + std::string(source) + " -> " +
                         std::string(target) + " in process '" + automaton.name + "'");
  }
  if (matches > 1) {
    throw SynthesisError("edge selector " + std::string(source) + " -> " +
                         std::string(target) + " is ambiguous (" +
                         std::to_string(matches) + " edges)");
  }
  Edge& edge = result.edges[match_index];
  if (edge.guard.kind() != GuardExpr::Kind::True || !edge.update.empty() ||
      edge.select) {
    throw SynthesisError("edge " + std::string(source) + " -> " + std::string(target) +
                         " is already guarded; replace it explicitly");
  }
  edge.guard = std::move(guard);
  edge.update = std::move(update);
  edge.select = std::move(select);
  return result;
}

Automaton add_edge(const Automaton& automaton, std::string_view source,
                   std::string_view target, GuardExpr guard, SyncAction sync,
                   UpdateStmt update) {
  Edge edge;
  edge.source = require_location(automaton, source);
  edge.target = require_location(automaton, target);
  edge.guard = std::move(guard);
  edge.sync = std::move(sync);
  edge.update = std::move(update);
  for (const Edge& existing : automaton.edges) {
    if (existing.source == edge.source && existing.target == edge.target &&
        existing.sync == edge.sync && existing.update == edge.update &&
        !existing.select && existing.guard.structurally_equal(edge.guard)) {
      throw SynthesisError("duplicate edge " + std::string(source) + " -> " +
                           std::string(target) + " in process '" + automaton.name + "'");
    }
  }
  Automaton result = automaton;
  result.edges.push_back(std::move(edge));
  return result;
}

std::vector<Channel> standard_channels(const SymbolMapping& mapping) {
  std::vector<Channel> channels;
  for (const char symbol : kAlphabet) {
    channels.push_back({mapping.channel_of(symbol), ChannelKind::Binary});
  }
  channels.push_back({mapping.done_channel(), ChannelKind::Broadcast});
  return channels;
}

Network assemble_network(Automaton behavioral, std::vector<Automaton> observers,
                         std::vector<VariableDecl> variables,
                         std::vector<Channel> channels) {
  Network network;
  network.processes.push_back(std::move(behavioral));
  for (auto& observer : observers) {
    network.processes.push_back(std::move(observer));
  }
  network.channels = std::move(channels);
  network.variables = std::move(variables);
  network.validate();
  return network;
}

std::vector<DisclosureRecord> records_for_user(const std::vector<DisclosureRecord>& records,
                                               std::string_view user_id) {
  std::vector<DisclosureRecord> mine;
  for (const auto& record : records) {
    if (record.user_id == user_id) mine.push_back(record);
  }
  return mine;
}

std::vector<std::string> shared_words(const std::vector<DisclosureRecord>& records,
                                      std::string_view user_id,
                                      const SymbolMapping& mapping) {
  std::vector<std::string> words;
  for (const auto& record : records_for_user(records, user_id)) {
    if (!record.shared) continue;
    const std::string word = encode_record(record, mapping);
    if (std::find(words.begin(), words.end(), word) == words.end()) {
      words.push_back(word);
    }
  }
  return words;
}

Network synthesize_network(const std::vector<DisclosureRecord>& records,
                           std::string_view user_id) {
  if (records_for_user(records, user_id).empty()) {
    throw SynthesisError("no records for user '" + std::string(user_id) + "'");
  }
  const SymbolMapping mapping;
  const std::vector<std::string> words = shared_words(records, user_id, mapping);
  Automaton behavioral = dfa_to_behavioral(words_to_min_dfa(words), mapping, "user");
  std::vector<Automaton> observers;
  observers.push_back(build_observer(ObserverKind::InfoType, mapping));
  observers.push_back(build_observer(ObserverKind::TrustSource, mapping));
  observers.push_back(build_observer(ObserverKind::RecipientRole, mapping));
  return assemble_network(std::move(behavioral), std::move(observers), {},
                          standard_channels(mapping));
}

}  // namespace privbeh

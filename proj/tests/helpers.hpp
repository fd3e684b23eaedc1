#pragma once

#include <string>
#include <vector>

#include "privbeh/io.hpp"
#include "privbeh/synthesis.hpp"

namespace privbeh::testing {

inline std::string data_path(const std::string& name) {
  return std::string(PRIVBEH_DATA_DIR) + "/" + name;
}

inline std::vector<DisclosureRecord> survey_records() {
  return load_records_file(data_path("survey_records.csv"));
}

inline Network user89() { return synthesize_network(survey_records(), "89"); }

/// User 242 with the day window on the finance -> expert -> family path and
/// the twice-only cap on the health -> family -> online path; `repaired`
/// adds the s4 -> Idle escape edge that fixes the deadlock.
inline Network user242_guarded(int day_lo, int day_hi, bool repaired) {
  const SymbolMapping mapping;
  const auto words = shared_words(survey_records(), "242", mapping);
  Automaton user = dfa_to_behavioral(words_to_min_dfa(words), mapping, "user");
  user = attach_guard(user, "Idle", "s2", {}, {}, SelectBinding{"day", day_lo, day_hi});
  user = attach_guard(user, "s2", "s5", parse_guard("1 <= day and day <= 5"), {});
  user = attach_guard(user, "s4", "Share", parse_guard("counter < 2"),
                      parse_update("counter := counter + 1"));
  if (repaired) {
    user = add_edge(user, "s4", "Idle", parse_guard("counter >= 2"),
                    SyncAction::emit(mapping.done_channel()));
  }
  std::vector<Automaton> observers;
  observers.push_back(build_observer(ObserverKind::InfoType, mapping));
  observers.push_back(build_observer(ObserverKind::TrustSource, mapping));
  observers.push_back(build_observer(ObserverKind::RecipientRole, mapping));
  return assemble_network(std::move(user), std::move(observers),
                          {{"counter", 0, 2, 0}, {"day", 1, 7, 1}},
                          standard_channels(mapping));
}

}  // namespace privbeh::testing

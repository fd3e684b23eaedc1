#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "privbeh/factors.hpp"
#include "privbeh/semantics.hpp"

namespace privbeh {

/// Reads the disclosure-record CSV (header: user_id, scenario_id,
/// information_type, trust_source, recipient_role, decision; canonical
/// lowercase factor tokens; decision 1/0). Errors carry the row number.
/// A user repeating a triple with a different decision is rejected.
std::vector<DisclosureRecord> load_records(std::istream& in);
std::vector<DisclosureRecord> load_records_file(const std::string& path);

/// Versioned JSON model file. save -> load is the identity and
/// save(load(save(n))) is byte-equal to save(n).
void save_model(const Network& network, std::ostream& out);
void save_model_file(const Network& network, const std::string& path);
Network load_model(std::istream& in);
Network load_model_file(const std::string& path);
std::string model_to_string(const Network& network);

/// Select-binding string form used in model files: "day : [1, 7]".
std::string select_str(const SelectBinding& select);
SelectBinding parse_select(std::string_view text);

/// Graphviz rendering of one process; committed locations get a double
/// outline, urgent ones a dashed one; edge labels show select / guard /
/// sync / update.
void export_dot(const Automaton& automaton, std::ostream& out);
/// One <process-name>.dot per process, creating the directory if needed.
void export_dot_files(const Network& network, const std::string& directory);

/// "user=Idle information_type=Health ... | counter=0 day=1" (variables in
/// declaration order; omitted when none are declared).
std::string describe_config(const Network& network, const Configuration& config);

/// Human-readable trace: initial line, then alternating step/state lines;
/// flags a deadlocked end, and annotates the lasso when `lasso_start` is
/// given (the final state repeats the state at that step index).
void write_trace_text(const Network& network, const Trace& trace, std::ostream& out,
                      std::optional<std::size_t> lasso_start = std::nullopt);

/// Machine-readable trace with the same content; read_trace_json restores a
/// trace that replays against the same network.
void write_trace_json(const Network& network, const Trace& trace, std::ostream& out);
Trace read_trace_json(const Network& network, std::istream& in);

}  // namespace privbeh

#include "privbeh/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lexer.hpp"

namespace privbeh {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kRecordHeader =
    "user_id,scenario_id,information_type,trust_source,recipient_role,decision";
constexpr int kModelVersion = 1;
constexpr int kTraceVersion = 1;

std::string trimmed(std::string text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(trimmed(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(trimmed(field));
  return fields;
}

[[noreturn]] void row_error(std::size_t row, const std::string& message) {
  throw IoError("row " + std::to_string(row) + ": " + message);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::vector<DisclosureRecord> load_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("record file is empty");
  if (trimmed(line) != kRecordHeader) {
    throw IoError("unexpected header '" + trimmed(line) + "'; expected '" +
                  std::string(kRecordHeader) + "'");
  }

  std::vector<DisclosureRecord> records;
  // (user, triple) -> (decision, first row), to reject conflicting repeats.
  std::map<std::pair<std::string, FactorTriple>, std::pair<bool, std::size_t>> seen;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trimmed(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 6) {
      row_error(row, "expected 6 fields, got " + std::to_string(fields.size()));
    }

    DisclosureRecord record;
    record.user_id = fields[0];
    if (record.user_id.empty()) row_error(row, "empty user_id");
    try {
      std::size_t used = 0;
      record.scenario_id = std::stoi(fields[1], &used);
      if (used != fields[1].size() || fields[1].empty()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      row_error(row, "scenario_id '" + fields[1] + "' is not an integer");
    }
    try {
      record.info_type = information_type_from_token(fields[2]);
      record.trust_source = trust_source_from_token(fields[3]);
      record.recipient_role = recipient_role_from_token(fields[4]);
    } catch (const IoError& error) {
      row_error(row, error.what());
    }
    if (fields[5] == "1") {
      record.shared = true;
    } else if (fields[5] == "0") {
      record.shared = false;
    } else {
      row_error(row, "decision '" + fields[5] + "' must be 1 or 0");
    }

    const auto key = std::make_pair(record.user_id, record.triple());
    const auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, std::make_pair(record.shared, row));
    } else if (it->second.first != record.shared) {
      row_error(row, "user " + record.user_id +
                         " repeats a scenario triple with a conflicting decision "
                         "(first seen at row " +
                         std::to_string(it->second.second) + ")");
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<DisclosureRecord> load_records_file(const std::string& path) {
  std::ifstream in = open_input(path);
  try {
    return load_records(in);
  } catch (const IoError& error) {
    throw IoError(path + ": " + error.what());
  }
}

std::string select_str(const SelectBinding& select) {
  return select.var + " : [" + std::to_string(select.lo) + ", " +
         std::to_string(select.hi) + "]";
}

SelectBinding parse_select(std::string_view text) {
  detail::TokenCursor cursor(text);
  SelectBinding select;
  select.var = cursor.expect(detail::Tok::Ident, "variable name").text;
  cursor.expect(detail::Tok::Colon, "':'");
  cursor.expect(detail::Tok::LBracket, "'['");
  const auto read_int = [&cursor]() {
    bool negative = false;
    if (cursor.peek().kind == detail::Tok::Minus) {
      cursor.next();
      negative = true;
    }
    const detail::Token token = cursor.expect(detail::Tok::Int, "integer");
    const int value = std::stoi(token.text);
    return negative ? -value : value;
  };
  select.lo = read_int();
  cursor.expect(detail::Tok::Comma, "','");
  select.hi = read_int();
  cursor.expect(detail::Tok::RBracket, "']'");
  if (!cursor.done()) {
    throw ParseError("unexpected '" + cursor.peek().text + "' after select range",
                     cursor.peek().pos);
  }
  return select;
}

namespace {

std::string guard_str(const GuardExpr& guard) {
  return guard.kind() == GuardExpr::Kind::True ? "" : guard.str();
}

ordered_json model_json(const Network& network) {
  ordered_json root;
  root["format"] = "privbeh-model";
  root["version"] = kModelVersion;

  root["channels"] = ordered_json::array();
  for (const Channel& channel : network.channels) {
    ordered_json entry;
    entry["name"] = channel.name;
    entry["kind"] = channel.kind == ChannelKind::Binary ? "binary" : "broadcast";
    root["channels"].push_back(std::move(entry));
  }

  root["variables"] = ordered_json::array();
  for (const VariableDecl& decl : network.variables) {
    ordered_json entry;
    entry["name"] = decl.name;
    entry["min"] = decl.min;
    entry["max"] = decl.max;
    entry["init"] = decl.init;
    root["variables"].push_back(std::move(entry));
  }

  root["processes"] = ordered_json::array();
  for (const Automaton& process : network.processes) {
    ordered_json proc;
    proc["name"] = process.name;
    proc["aliases"] = process.aliases;
    proc["locations"] = ordered_json::array();
    for (const Location& location : process.locations) {
      ordered_json entry;
      entry["name"] = location.name;
      entry["initial"] = location.initial;
      entry["committed"] = location.committed;
      entry["urgent"] = location.urgent;
      entry["aliases"] = location.aliases;
      proc["locations"].push_back(std::move(entry));
    }
    proc["edges"] = ordered_json::array();
    for (const Edge& edge : process.edges) {
      ordered_json entry;
      entry["source"] = process.locations[edge.source].name;
      entry["target"] = process.locations[edge.target].name;
      entry["select"] = edge.select ? select_str(*edge.select) : "";
      entry["guard"] = guard_str(edge.guard);
      entry["sync"] = edge.sync.str();
      entry["update"] = edge.update.str();
      proc["edges"].push_back(std::move(entry));
    }
    root["processes"].push_back(std::move(proc));
  }
  return root;
}

}  // namespace

void save_model(const Network& network, std::ostream& out) {
  out << model_json(network).dump(2) << '\n';
}

void save_model_file(const Network& network, const std::string& path) {
  std::ofstream out = open_output(path);
  save_model(network, out);
}

std::string model_to_string(const Network& network) {
  std::ostringstream out;
  save_model(network, out);
  return out.str();
}

Network load_model(std::istream& in) {
  ordered_json root;
  try {
    root = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& error) {
    throw IoError(std::string("model file is not valid JSON: ") + error.what());
  }

  try {
    if (root.value("format", "") != "privbeh-model") {
      throw IoError("not a privbeh model file (missing format tag)");
    }
    if (root.value("version", -1) != kModelVersion) {
      throw IoError("schema version mismatch: expected " +
                    std::to_string(kModelVersion) + ", got " +
                    (root.contains("version") ? root["version"].dump() : "none"));
    }

    Network network;
    for (const auto& entry : root.value("channels", ordered_json::array())) {
      Channel channel;
      channel.name = entry.at("name").get<std::string>();
      const std::string kind = entry.at("kind").get<std::string>();
      if (kind == "binary") {
        channel.kind = ChannelKind::Binary;
      } else if (kind == "broadcast") {
        channel.kind = ChannelKind::Broadcast;
      } else {
        throw IoError("channel '" + channel.name + "' has unknown kind '" + kind + "'");
      }
      network.channels.push_back(std::move(channel));
    }

    for (const auto& entry : root.value("variables", ordered_json::array())) {
      VariableDecl decl;
      decl.name = entry.at("name").get<std::string>();
      decl.min = entry.at("min").get<int>();
      decl.max = entry.at("max").get<int>();
      decl.init = entry.at("init").get<int>();
      network.variables.push_back(std::move(decl));
    }

    for (const auto& proc : root.value("processes", ordered_json::array())) {
      Automaton process;
      process.name = proc.at("name").get<std::string>();
      process.aliases = proc.value("aliases", std::vector<std::string>{});
      for (const auto& entry : proc.value("locations", ordered_json::array())) {
        Location location;
        location.name = entry.at("name").get<std::string>();
        location.initial = entry.value("initial", false);
        location.committed = entry.value("committed", false);
        location.urgent = entry.value("urgent", false);
        location.aliases = entry.value("aliases", std::vector<std::string>{});
        process.locations.push_back(std::move(location));
      }
      std::size_t edge_number = 0;
      for (const auto& entry : proc.value("edges", ordered_json::array())) {
        ++edge_number;
        const std::string context = "process '" + process.name + "' edge #" +
                                    std::to_string(edge_number);
        Edge edge;
        const std::string source = entry.at("source").get<std::string>();
        const std::string target = entry.at("target").get<std::string>();
        const auto source_index = process.find_location(source);
        const auto target_index = process.find_location(target);
        if (!source_index || !target_index) {
          throw IoError(context + ": unknown location '" +
                        (source_index ? target : source) + "'");
        }
        edge.source = *source_index;
        edge.target = *target_index;
        try {
          const std::string select = entry.value("select", "");
          if (!select.empty()) edge.select = parse_select(select);
          const std::string guard = entry.value("guard", "");
          edge.guard = guard.empty() ? GuardExpr::literal_true() : parse_guard(guard);
          edge.sync = SyncAction::parse(entry.value("sync", ""));
          edge.update = parse_update(entry.value("update", ""));
        } catch (const Error& error) {
          throw IoError(context + ": " + error.what());
        }
        process.edges.push_back(std::move(edge));
      }
      network.processes.push_back(std::move(process));
    }

    try {
      network.validate();
    } catch (const ModelError& error) {
      throw IoError(std::string("invalid model: ") + error.what());
    }
    return network;
  } catch (const ordered_json::exception& error) {
    throw IoError(std::string("malformed model file: ") + error.what());
  }
}

Network load_model_file(const std::string& path) {
  std::ifstream in = open_input(path);
  try {
    return load_model(in);
  } catch (const IoError& error) {
    throw IoError(path + ": " + error.what());
  }
}

namespace {

std::string dot_escaped(const std::string& text) {
  std::string out;
  for (const char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string edge_label(const Edge& edge) {
  std::vector<std::string> parts;
  if (edge.select) parts.push_back(select_str(*edge.select));
  if (edge.guard.kind() != GuardExpr::Kind::True) parts.push_back(edge.guard.str());
  if (edge.sync.kind != SyncKind::None) parts.push_back(edge.sync.str());
  if (!edge.update.empty()) parts.push_back(edge.update.str());
  std::string label;
  for (const std::string& part : parts) {
    if (!label.empty()) label += " / ";
    label += part;
  }
  return label;
}

}  // namespace

void export_dot(const Automaton& automaton, std::ostream& out) {
  out << "digraph " << automaton.name << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=ellipse, fontname=\"Helvetica\"];\n";
  out << "  \"__initial\" [shape=point, label=\"\"];\n";
  for (const Location& location : automaton.locations) {
    out << "  \"" << dot_escaped(location.name) << "\"";
    std::vector<std::string> attrs;
    if (location.committed) attrs.push_back("peripheries=2");
    if (location.urgent) attrs.push_back("style=dashed");
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) {
        out << (i ? ", " : "") << attrs[i];
      }
      out << "]";
    }
    out << ";\n";
  }
  out << "  \"__initial\" -> \""
      << dot_escaped(automaton.locations[automaton.initial_location()].name)
      << "\";\n";
  for (const Edge& edge : automaton.edges) {
    out << "  \"" << dot_escaped(automaton.locations[edge.source].name) << "\" -> \""
        << dot_escaped(automaton.locations[edge.target].name) << "\"";
    const std::string label = edge_label(edge);
    if (!label.empty()) out << " [label=\"" << dot_escaped(label) << "\"]";
    out << ";\n";
  }
  out << "}\n";
}

void export_dot_files(const Network& network, const std::string& directory) {
  std::filesystem::create_directories(directory);
  for (const Automaton& process : network.processes) {
    std::ofstream out =
        open_output((std::filesystem::path(directory) / (process.name + ".dot")).string());
    export_dot(process, out);
  }
}

std::string describe_config(const Network& network, const Configuration& config) {
  std::string text;
  for (std::size_t p = 0; p < network.processes.size(); ++p) {
    const Automaton& process = network.processes[p];
    if (!text.empty()) text += " ";
    text += process.name + "=" + process.locations[config.locations[p]].name;
  }
  if (!network.variables.empty()) {
    text += " |";
    for (const VariableDecl& decl : network.variables) {
      text += " " + decl.name + "=" + std::to_string(config.valuation.get(decl.name));
    }
  }
  return text;
}

void write_trace_text(const Network& network, const Trace& trace, std::ostream& out,
                      std::optional<std::size_t> lasso_start) {
  out << "initial: " << describe_config(network, trace.initial) << "\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    out << "step " << (i + 1) << ": " << describe_step(network, trace.steps[i].step)
        << "\n";
    out << "state " << (i + 1) << ": "
        << describe_config(network, trace.steps[i].config) << "\n";
  }
  if (trace.deadlocked) {
    out << "deadlocked: no enabled transitions from the final state\n";
  }
  if (lasso_start) {
    out << "cycle: the final state repeats state " << *lasso_start << "\n";
  }
}

namespace {

ordered_json config_json(const Network& network, const Configuration& config) {
  ordered_json entry;
  entry["locations"] = ordered_json::object();
  for (std::size_t p = 0; p < network.processes.size(); ++p) {
    const Automaton& process = network.processes[p];
    entry["locations"][process.name] = process.locations[config.locations[p]].name;
  }
  entry["variables"] = ordered_json::object();
  for (const VariableDecl& decl : network.variables) {
    entry["variables"][decl.name] = config.valuation.get(decl.name);
  }
  return entry;
}

Configuration config_from_json(const Network& network, const ordered_json& entry) {
  Configuration config;
  const auto& locations = entry.at("locations");
  for (const Automaton& process : network.processes) {
    const std::string name = locations.at(process.name).get<std::string>();
    const auto index = process.find_location(name);
    if (!index) {
      throw IoError("trace names unknown location '" + name + "' in process '" +
                    process.name + "'");
    }
    config.locations.push_back(*index);
  }
  for (const auto& [name, value] : entry.at("variables").items()) {
    if (!network.find_variable(name)) {
      throw IoError("trace names unknown variable '" + name + "'");
    }
    config.valuation.set(name, value.get<int>());
  }
  return config;
}

ordered_json participant_json(const Network& network, const Participant& participant) {
  ordered_json entry;
  entry["process"] = network.processes[participant.process].name;
  entry["edge"] = participant.edge;
  if (participant.select_value) {
    entry["select"] = *participant.select_value;
  } else {
    entry["select"] = nullptr;
  }
  return entry;
}

Participant participant_from_json(const Network& network, const ordered_json& entry) {
  Participant participant;
  const std::string name = entry.at("process").get<std::string>();
  const auto process = network.find_process(name);
  if (!process) throw IoError("trace names unknown process '" + name + "'");
  participant.process = *process;
  participant.edge = entry.at("edge").get<std::size_t>();
  if (participant.edge >= network.processes[*process].edges.size()) {
    throw IoError("trace references edge #" + std::to_string(participant.edge) +
                  " past the end of process '" + name + "'");
  }
  if (!entry.at("select").is_null()) {
    participant.select_value = entry.at("select").get<int>();
  }
  return participant;
}

std::string step_kind_token(StepKind kind) {
  switch (kind) {
    case StepKind::Internal: return "internal";
    case StepKind::Binary: return "binary";
    case StepKind::Broadcast: return "broadcast";
  }
  throw IoError("invalid step kind");
}

StepKind step_kind_from_token(const std::string& token) {
  if (token == "internal") return StepKind::Internal;
  if (token == "binary") return StepKind::Binary;
  if (token == "broadcast") return StepKind::Broadcast;
  throw IoError("unknown step kind '" + token + "'");
}

}  // namespace

void write_trace_json(const Network& network, const Trace& trace, std::ostream& out) {
  ordered_json root;
  root["format"] = "privbeh-trace";
  root["version"] = kTraceVersion;
  root["deadlocked"] = trace.deadlocked;
  root["initial"] = config_json(network, trace.initial);
  root["steps"] = ordered_json::array();
  for (const TraceStep& trace_step : trace.steps) {
    ordered_json entry;
    entry["kind"] = step_kind_token(trace_step.step.kind);
    entry["initiator"] = participant_json(network, trace_step.step.initiator);
    entry["receivers"] = ordered_json::array();
    for (const Participant& receiver : trace_step.step.receivers) {
      entry["receivers"].push_back(participant_json(network, receiver));
    }
    entry["config"] = config_json(network, trace_step.config);
    root["steps"].push_back(std::move(entry));
  }
  out << root.dump(2) << '\n';
}

Trace read_trace_json(const Network& network, std::istream& in) {
  ordered_json root;
  try {
    root = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& error) {
    throw IoError(std::string("trace file is not valid JSON: ") + error.what());
  }
  try {
    if (root.value("format", "") != "privbeh-trace") {
      throw IoError("not a privbeh trace file (missing format tag)");
    }
    if (root.value("version", -1) != kTraceVersion) {
      throw IoError("trace schema version mismatch");
    }
    Trace trace;
    trace.deadlocked = root.value("deadlocked", false);
    trace.initial = config_from_json(network, root.at("initial"));
    for (const auto& entry : root.value("steps", ordered_json::array())) {
      TraceStep trace_step;
      trace_step.step.kind = step_kind_from_token(entry.at("kind").get<std::string>());
      trace_step.step.initiator = participant_from_json(network, entry.at("initiator"));
      for (const auto& receiver : entry.value("receivers", ordered_json::array())) {
        trace_step.step.receivers.push_back(participant_from_json(network, receiver));
      }
      trace_step.config = config_from_json(network, entry.at("config"));
      trace.steps.push_back(std::move(trace_step));
    }
    return trace;
  } catch (const ordered_json::exception& error) {
    throw IoError(std::string("malformed trace file: ") + error.what());
  }
}

}  // namespace privbeh

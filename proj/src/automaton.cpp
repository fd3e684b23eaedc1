#include "privbeh/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace privbeh {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_identifier(const std::string& name, const std::string& what) {
  if (name.empty()) throw ModelError(what + " name must not be empty");
}

}  // namespace

std::string SyncAction::str() const {
  switch (kind) {
    case SyncKind::None: return "";
    case SyncKind::Emit: return channel + "!";
    case SyncKind::Receive: return channel + "?";
  }
  throw ModelError("invalid sync action");
}

SyncAction SyncAction::parse(std::string_view text) {
  if (text.empty()) return none();
  const char tail = text.back();
  if (tail != '!' && tail != '?') {
    throw ModelError("sync action '" + std::string(text) + "' must end in '!' or '?'");
  }
  std::string chan(text.substr(0, text.size() - 1));
  if (chan.empty()) {
    throw ModelError("sync action '" + std::string(text) + "' has no channel name");
  }
  return tail == '!' ? emit(std::move(chan)) : receive(std::move(chan));
}

std::size_t Automaton::initial_location() const {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (locations[i].initial) {
      if (found) throw ModelError("process '" + name + "' has more than one initial location");
      found = i;
    }
  }
  if (!found) throw ModelError("process '" + name + "' has no initial location");
  return *found;
}

std::optional<std::size_t> Automaton::find_location(std::string_view loc_name) const {
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (locations[i].name == loc_name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Automaton::resolve_location(std::string_view loc_name) const {
  const std::string wanted = lowercase(loc_name);
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    bool matches = lowercase(locations[i].name) == wanted;
    for (const auto& alias : locations[i].aliases) {
      matches = matches || lowercase(alias) == wanted;
    }
    if (matches) {
      if (found && *found != i) {
        throw ModelError("location name '" + std::string(loc_name) +
                         "' is ambiguous in process '" + name + "'");
      }
      found = i;
    }
  }
  return found;
}

void Automaton::validate() const {
  check_identifier(name, "process");
  std::set<std::string> seen;
  for (const auto& loc : locations) {
    check_identifier(loc.name, "location");
    if (!seen.insert(loc.name).second) {
      throw ModelError("duplicate location '" + loc.name + "' in process '" + name + "'");
    }
    for (const auto& alias : loc.aliases) {
      if (!seen.insert(alias).second) {
        throw ModelError("location alias '" + alias + "' collides in process '" + name + "'");
      }
    }
    if (loc.committed && loc.urgent) {
      throw ModelError("location '" + loc.name + "' in process '" + name +
                       "' is both committed and urgent");
    }
  }
  initial_location();
  for (const auto& edge : edges) {
    if (edge.source >= locations.size() || edge.target >= locations.size()) {
      throw ModelError("edge endpoint out of range in process '" + name + "'");
    }
    if (edge.select && edge.select->lo > edge.select->hi) {
      throw ModelError("select range [" + std::to_string(edge.select->lo) + ", " +
                       std::to_string(edge.select->hi) + "] is empty in process '" +
                       name + "'");
    }
  }
}

std::optional<std::size_t> Network::find_process(std::string_view process_name) const {
  for (std::size_t i = 0; i < processes.size(); ++i) {
    if (processes[i].name == process_name) return i;
    for (const auto& alias : processes[i].aliases) {
      if (alias == process_name) return i;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> Network::find_channel(std::string_view channel_name) const {
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].name == channel_name) return i;
  }
  return std::nullopt;
}

const VariableDecl* Network::find_variable(std::string_view var_name) const {
  for (const auto& decl : variables) {
    if (decl.name == var_name) return &decl;
  }
  return nullptr;
}

Valuation Network::initial_valuation() const {
  Valuation valuation;
  for (const auto& decl : variables) {
    valuation.set(decl.name, decl.init);
  }
  return valuation;
}

void Network::validate() const {
  std::set<std::string> process_names;
  for (const auto& process : processes) {
    process.validate();
    if (!process_names.insert(process.name).second) {
      throw ModelError("duplicate process name '" + process.name + "'");
    }
    for (const auto& alias : process.aliases) {
      if (!process_names.insert(alias).second) {
        throw ModelError("process alias '" + alias + "' collides with another process name");
      }
    }
  }

  std::set<std::string> channel_names;
  for (const auto& channel : channels) {
    check_identifier(channel.name, "channel");
    if (!channel_names.insert(channel.name).second) {
      throw ModelError("duplicate channel '" + channel.name + "'");
    }
  }

  std::set<std::string> variable_names;
  for (const auto& decl : variables) {
    check_identifier(decl.name, "variable");
    if (!variable_names.insert(decl.name).second) {
      throw ModelError("duplicate variable '" + decl.name + "'");
    }
    if (decl.min > decl.max || decl.init < decl.min || decl.init > decl.max) {
      throw ModelError("variable '" + decl.name + "' must satisfy min <= init <= max");
    }
  }

  auto require_variable = [&](const std::string& var, const std::string& where) {
    if (!variable_names.count(var)) {
      throw ModelError("undeclared variable '" + var + "' referenced " + where);
    }
  };

  for (const auto& process : processes) {
    for (const auto& edge : process.edges) {
      const std::string where = "in process '" + process.name + "'";
      if (edge.sync.kind != SyncKind::None && !find_channel(edge.sync.channel)) {
        throw ModelError("undeclared channel '" + edge.sync.channel + "' " + where);
      }
      std::set<std::string> vars;
      edge.guard.collect_variables(vars);
      edge.update.collect_variables(vars);
      for (const auto& var : vars) require_variable(var, where);
      if (edge.select) {
        require_variable(edge.select->var, where);
        const VariableDecl* decl = find_variable(edge.select->var);
        if (edge.select->lo < decl->min || edge.select->hi > decl->max) {
          throw ModelError("select range for '" + decl->name +
                           "' exceeds the variable's declared bounds " + where);
        }
      }
    }
  }
}

}  // namespace privbeh

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "privbeh/expr.hpp"

namespace privbeh {

enum class ChannelKind { Binary, Broadcast };

struct Channel {
  std::string name;
  ChannelKind kind = ChannelKind::Binary;

  bool operator==(const Channel&) const = default;
};

enum class SyncKind { None, Emit, Receive };

/// Edge synchronization label: nothing, `chan!`, or `chan?`.
struct SyncAction {
  SyncKind kind = SyncKind::None;
  std::string channel;

  static SyncAction none() { return {}; }
  static SyncAction emit(std::string chan) { return {SyncKind::Emit, std::move(chan)}; }
  static SyncAction receive(std::string chan) { return {SyncKind::Receive, std::move(chan)}; }

  std::string str() const;
  static SyncAction parse(std::string_view text);

  bool operator==(const SyncAction&) const = default;
};

/// Nondeterministic per-value binding: firing the edge picks one value in
/// [lo, hi] and assigns it to `var` before the guard is evaluated.
struct SelectBinding {
  std::string var;
  int lo = 0;
  int hi = 0;

  bool operator==(const SelectBinding&) const = default;
};

struct Location {
  std::string name;
  bool initial = false;
  bool committed = false;
  bool urgent = false;
  /// Alternative names accepted when binding queries against this location.
  std::vector<std::string> aliases;
};

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  GuardExpr guard;
  SyncAction sync;
  UpdateStmt update;
  std::optional<SelectBinding> select;
};

/// One process: named locations plus guarded, synchronizing edges.
struct Automaton {
  std::string name;
  /// Alternative process names accepted when binding queries.
  std::vector<std::string> aliases;
  std::vector<Location> locations;
  std::vector<Edge> edges;

  std::size_t initial_location() const;
  const Location& location(std::size_t index) const { return locations.at(index); }

  /// Exact-name lookup.
  std::optional<std::size_t> find_location(std::string_view name) const;
  /// Case-insensitive lookup over names and aliases, as used by query
  /// binding. Throws ModelError if the lookup is ambiguous.
  std::optional<std::size_t> resolve_location(std::string_view name) const;

  /// Checks naming uniqueness, edge endpoints, the single-initial-location
  /// rule, and committed/urgent exclusivity. Throws ModelError.
  void validate() const;
};

/// Parallel composition: an ordered list of processes sharing channels and
/// bounded integer variables.
struct Network {
  std::vector<Automaton> processes;
  std::vector<Channel> channels;
  std::vector<VariableDecl> variables;

  std::optional<std::size_t> find_process(std::string_view name) const;
  std::optional<std::size_t> find_channel(std::string_view name) const;
  const VariableDecl* find_variable(std::string_view name) const;

  Valuation initial_valuation() const;

  /// Validates every process, then channel/variable resolution for all
  /// sync actions, guards, updates and selects. Throws ModelError.
  void validate() const;
};

}  // namespace privbeh

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "privbeh/automaton.hpp"

namespace privbeh {

/// Global network state: one location index per process plus the variable
/// valuation. Ordered so configurations can key a std::map deterministically.
struct Configuration {
  std::vector<std::size_t> locations;
  Valuation valuation;

  bool operator==(const Configuration&) const = default;
  bool operator<(const Configuration& other) const;
};

/// One process's share of a step: the edge it fires and, when that edge
/// carries a select binding, the chosen value.
struct Participant {
  std::size_t process = 0;
  std::size_t edge = 0;
  std::optional<int> select_value;

  bool operator==(const Participant&) const = default;
};

enum class StepKind { Internal, Binary, Broadcast };

/// One network transition: an internal edge, a binary handshake (exactly one
/// receiver), or a broadcast (any number of receivers, possibly none).
struct Step {
  StepKind kind = StepKind::Internal;
  Participant initiator;
  std::vector<Participant> receivers;

  bool operator==(const Step&) const = default;
};

/// Compact human-readable label, e.g.
/// "finance! user: Idle -> s2, information_type: Information_Type -> Finance".
std::string describe_step(const Network& network, const Step& step);

struct TraceStep {
  Step step;
  Configuration config;

  bool operator==(const TraceStep&) const = default;
};

/// Replayable run: applying each step to the previous configuration must
/// reproduce the recorded one.
struct Trace {
  Configuration initial;
  std::vector<TraceStep> steps;
  /// True when the trace ends in a configuration with no enabled step.
  bool deadlocked = false;

  bool operator==(const Trace&) const = default;
  const Configuration& final_config() const {
    return steps.empty() ? initial : steps.back().config;
  }
};

Configuration initial_config(const Network& network);

/// All enabled steps in deterministic order: processes in network order,
/// edges in declaration order, select values ascending; binary receivers and
/// broadcast receiver combinations expanded in the same order. Committed
/// priority: when any process occupies a committed location, only steps with
/// at least one participating edge leaving a committed location survive.
std::vector<Step> successors(const Network& network, const Configuration& config);

/// Fires the step: select values are bound first, then the initiator's
/// update, then each receiver's in listed order. BoundsError (wrapped with
/// the step description) when an update leaves a variable's range.
Configuration apply_step(const Network& network, const Configuration& config,
                         const Step& step);

bool is_deadlock(const Network& network, const Configuration& config);

/// Breadth-first exhaustive exploration; indices are BFS discovery order
/// (initial configuration = 0).
struct Exploration {
  std::vector<Configuration> configs;
  std::map<Configuration, std::size_t> index_of;
  /// BFS tree: parent configuration and the step that reached this one;
  /// empty for the initial configuration.
  std::vector<std::optional<std::pair<std::size_t, Step>>> parent;
  std::vector<std::size_t> depth;
  /// Full successor relation, in successors() order.
  std::vector<std::vector<std::pair<Step, std::size_t>>> edges;

  bool deadlocked(std::size_t index) const { return edges[index].empty(); }
  /// Shortest path from the initial configuration (via BFS parents).
  Trace trace_to(std::size_t index) const;
};

Exploration explore(const Network& network);

/// Seeded uniform random walk; stops at max_steps or deadlock (flagged).
/// Identical seed and network give an identical trace.
Trace simulate(const Network& network, std::uint64_t seed, std::size_t max_steps);

/// True iff every recorded step is enabled in sequence and reproduces the
/// recorded configurations.
bool replay_ok(const Network& network, const Trace& trace);

/// Labels for successors(config), index-aligned, for interactive stepping.
std::vector<std::string> step_choices(const Network& network,
                                      const Configuration& config);

}  // namespace privbeh

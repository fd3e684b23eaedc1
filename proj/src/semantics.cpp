#include "privbeh/semantics.hpp"

#include <deque>
#include <random>
#include <tuple>

namespace privbeh {

bool Configuration::operator<(const Configuration& other) const {
  return std::tie(locations, valuation.values) <
         std::tie(other.locations, other.valuation.values);
}

Configuration initial_config(const Network& network) {
  Configuration config;
  for (const Automaton& process : network.processes) {
    config.locations.push_back(process.initial_location());
  }
  config.valuation = network.initial_valuation();
  return config;
}

namespace {

// One enabled (edge, select-value) option of a single process.
struct Candidate {
  std::size_t edge = 0;
  std::optional<int> select_value;
};

// Enabled options of process `p` at the configuration, in declaration order
// with select values ascending, filtered by `wanted` on the sync action.
template <typename SyncPred>
std::vector<Candidate> enabled_candidates(const Network& network,
                                          const Configuration& config, std::size_t p,
                                          SyncPred wanted) {
  const Automaton& process = network.processes[p];
  const std::size_t at = config.locations[p];
  std::vector<Candidate> candidates;
  for (std::size_t e = 0; e < process.edges.size(); ++e) {
    const Edge& edge = process.edges[e];
    if (edge.source != at || !wanted(edge.sync)) continue;
    if (edge.select) {
      for (int value = edge.select->lo; value <= edge.select->hi; ++value) {
        Valuation bound = config.valuation;
        bound.set(edge.select->var, value);
        if (edge.guard.evaluate(bound)) candidates.push_back({e, value});
      }
    } else if (edge.guard.evaluate(config.valuation)) {
      candidates.push_back({e, std::nullopt});
    }
  }
  return candidates;
}

bool participant_committed(const Network& network, const Participant& participant) {
  const Automaton& process = network.processes[participant.process];
  const Edge& edge = process.edges[participant.edge];
  return process.locations[edge.source].committed;
}

bool step_allowed(const Network& network, const Step& step, bool committed_active) {
  if (!committed_active) return true;
  if (participant_committed(network, step.initiator)) return true;
  for (const Participant& receiver : step.receivers) {
    if (participant_committed(network, receiver)) return true;
  }
  return false;
}

}  // namespace

std::vector<Step> successors(const Network& network, const Configuration& config) {
  bool committed_active = false;
  for (std::size_t p = 0; p < network.processes.size(); ++p) {
    const Automaton& process = network.processes[p];
    committed_active = committed_active ||
                       process.locations[config.locations[p]].committed;
  }

  std::vector<Step> steps;
  const auto consider = [&](Step step) {
    if (step_allowed(network, step, committed_active)) {
      steps.push_back(std::move(step));
    }
  };

  for (std::size_t p = 0; p < network.processes.size(); ++p) {
    const Automaton& process = network.processes[p];
    const auto initiators = enabled_candidates(
        network, config, p,
        [](const SyncAction& sync) { return sync.kind != SyncKind::Receive; });
    for (const Candidate& initiator : initiators) {
      const Edge& edge = process.edges[initiator.edge];
      if (edge.sync.kind == SyncKind::None) {
        Step step;
        step.kind = StepKind::Internal;
        step.initiator = {p, initiator.edge, initiator.select_value};
        consider(std::move(step));
        continue;
      }

      const std::size_t channel_index = *network.find_channel(edge.sync.channel);
      const auto receives_channel = [&](const SyncAction& sync) {
        return sync.kind == SyncKind::Receive && sync.channel == edge.sync.channel;
      };

      if (network.channels[channel_index].kind == ChannelKind::Binary) {
        for (std::size_t q = 0; q < network.processes.size(); ++q) {
          if (q == p) continue;
          for (const Candidate& receiver :
               enabled_candidates(network, config, q, receives_channel)) {
            Step step;
            step.kind = StepKind::Binary;
            step.initiator = {p, initiator.edge, initiator.select_value};
            step.receivers.push_back({q, receiver.edge, receiver.select_value});
            consider(std::move(step));
          }
        }
        continue;
      }

      // Broadcast: every process with an enabled receive participates with
      // exactly one of its options; enumerate all combinations, leftmost
      // process most significant.
      std::vector<std::size_t> listening;
      std::vector<std::vector<Candidate>> options;
      for (std::size_t q = 0; q < network.processes.size(); ++q) {
        if (q == p) continue;
        auto candidates = enabled_candidates(network, config, q, receives_channel);
        if (!candidates.empty()) {
          listening.push_back(q);
          options.push_back(std::move(candidates));
        }
      }
      std::vector<std::size_t> pick(listening.size(), 0);
      while (true) {
        Step step;
        step.kind = StepKind::Broadcast;
        step.initiator = {p, initiator.edge, initiator.select_value};
        for (std::size_t i = 0; i < listening.size(); ++i) {
          const Candidate& choice = options[i][pick[i]];
          step.receivers.push_back({listening[i], choice.edge, choice.select_value});
        }
        consider(std::move(step));
        std::size_t i = listening.size();
        while (i > 0 && ++pick[i - 1] == options[i - 1].size()) {
          pick[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
  }
  return steps;
}

Configuration apply_step(const Network& network, const Configuration& config,
                         const Step& step) {
  Configuration next = config;
  const auto bind_select = [&](const Participant& participant) {
    const Edge& edge =
        network.processes[participant.process].edges[participant.edge];
    if (edge.select) next.valuation.set(edge.select->var, *participant.select_value);
  };
  const auto fire = [&](const Participant& participant) {
    const Edge& edge =
        network.processes[participant.process].edges[participant.edge];
    next.valuation = apply_update(edge.update, next.valuation, network.variables);
    next.locations[participant.process] = edge.target;
  };
  try {
    bind_select(step.initiator);
    for (const Participant& receiver : step.receivers) bind_select(receiver);
    fire(step.initiator);
    for (const Participant& receiver : step.receivers) fire(receiver);
  } catch (const BoundsError& error) {
    throw ModelError("step '" + describe_step(network, step) + "': " + error.what());
  }
  return next;
}

bool is_deadlock(const Network& network, const Configuration& config) {
  return successors(network, config).empty();
}

std::string describe_step(const Network& network, const Step& step) {
  const auto participant_text = [&](const Participant& participant) {
    const Automaton& process = network.processes[participant.process];
    const Edge& edge = process.edges[participant.edge];
    std::string text = process.name + ": " + process.locations[edge.source].name +
                       " -> " + process.locations[edge.target].name;
    if (edge.select && participant.select_value) {
      text += " [" + edge.select->var + "=" +
              std::to_string(*participant.select_value) + "]";
    }
    return text;
  };

  const Edge& initiator_edge =
      network.processes[step.initiator.process].edges[step.initiator.edge];
  std::string text;
  if (initiator_edge.sync.kind != SyncKind::None) {
    text = initiator_edge.sync.str() + " ";
  }
  text += participant_text(step.initiator);
  for (const Participant& receiver : step.receivers) {
    text += ", " + participant_text(receiver);
  }
  return text;
}

Trace Exploration::trace_to(std::size_t index) const {
  std::vector<TraceStep> reversed;
  std::size_t at = index;
  while (parent[at]) {
    const auto& [from, step] = *parent[at];
    reversed.push_back({step, configs[at]});
    at = from;
  }
  Trace trace;
  trace.initial = configs[0];
  trace.steps.assign(reversed.rbegin(), reversed.rend());
  trace.deadlocked = deadlocked(index);
  return trace;
}

Exploration explore(const Network& network) {
  Exploration result;
  const auto intern = [&](const Configuration& config) {
    const auto it = result.index_of.find(config);
    if (it != result.index_of.end()) return it->second;
    const std::size_t index = result.configs.size();
    result.configs.push_back(config);
    result.index_of.emplace(config, index);
    result.parent.emplace_back();
    result.depth.push_back(0);
    result.edges.emplace_back();
    return index;
  };

  std::deque<std::size_t> frontier{intern(initial_config(network))};
  while (!frontier.empty()) {
    const std::size_t from = frontier.front();
    frontier.pop_front();
    const Configuration config = result.configs[from];
    for (Step& step : successors(network, config)) {
      const Configuration next = apply_step(network, config, step);
      const std::size_t known = result.configs.size();
      const std::size_t to = intern(next);
      if (to == known) {  // first discovery
        result.parent[to] = {from, step};
        result.depth[to] = result.depth[from] + 1;
        frontier.push_back(to);
      }
      result.edges[from].emplace_back(std::move(step), to);
    }
  }
  return result;
}

Trace simulate(const Network& network, std::uint64_t seed, std::size_t max_steps) {
  std::mt19937_64 rng(seed);
  Trace trace;
  trace.initial = initial_config(network);
  Configuration config = trace.initial;
  for (std::size_t i = 0; i < max_steps; ++i) {
    const std::vector<Step> options = successors(network, config);
    if (options.empty()) {
      trace.deadlocked = true;
      break;
    }
    const Step& step = options[rng() % options.size()];
    config = apply_step(network, config, step);
    trace.steps.push_back({step, config});
  }
  return trace;
}

bool replay_ok(const Network& network, const Trace& trace) {
  Configuration config = trace.initial;
  for (const TraceStep& recorded : trace.steps) {
    const std::vector<Step> options = successors(network, config);
    bool enabled = false;
    for (const Step& option : options) {
      enabled = enabled || option == recorded.step;
    }
    if (!enabled) return false;
    config = apply_step(network, config, recorded.step);
    if (!(config == recorded.config)) return false;
  }
  if (trace.deadlocked && !is_deadlock(network, config)) return false;
  return true;
}

std::vector<std::string> step_choices(const Network& network,
                                      const Configuration& config) {
  std::vector<std::string> labels;
  for (const Step& step : successors(network, config)) {
    labels.push_back(describe_step(network, step));
  }
  return labels;
}

}  // namespace privbeh

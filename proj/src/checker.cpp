#include "privbeh/checker.hpp"

#include <chrono>
#include <deque>

namespace privbeh {

namespace {

std::vector<bool> evaluate_everywhere(const Exploration& exploration,
                                      const BoundFormula& formula) {
  std::vector<bool> holds(exploration.configs.size(), false);
  for (std::size_t i = 0; i < exploration.configs.size(); ++i) {
    holds[i] = eval_formula(formula, exploration.configs[i], exploration.deadlocked(i));
  }
  return holds;
}

/// First configuration in BFS order satisfying `holds`, if any.
std::optional<std::size_t> first_satisfying(const std::vector<bool>& holds) {
  for (std::size_t i = 0; i < holds.size(); ++i) {
    if (holds[i]) return i;
  }
  return std::nullopt;
}

struct Evidence {
  bool found = false;
  Trace trace;
  std::optional<std::size_t> lasso_start;
};

/// Decides "some maximal path stays inside `inside` forever": either a path
/// to a real deadlock all inside, or a cycle all inside. Paths that merely
/// run out of inside-successors are not maximal and do not count.
Evidence exists_globally(const Exploration& exploration,
                         const std::vector<bool>& inside) {
  Evidence evidence;
  if (exploration.configs.empty() || !inside[0]) return evidence;

  // Deadlock-terminated evidence first: BFS within the subgraph, so the
  // returned path is the shortest such witness.
  {
    std::vector<std::optional<std::pair<std::size_t, Step>>> parent(
        exploration.configs.size());
    std::vector<bool> seen(exploration.configs.size(), false);
    std::deque<std::size_t> frontier{0};
    seen[0] = true;
    while (!frontier.empty()) {
      const std::size_t at = frontier.front();
      frontier.pop_front();
      if (exploration.deadlocked(at)) {
        evidence.found = true;
        std::vector<TraceStep> reversed;
        for (std::size_t walk = at; parent[walk];) {
          const auto& [from, step] = *parent[walk];
          reversed.push_back({step, exploration.configs[walk]});
          walk = from;
        }
        evidence.trace.initial = exploration.configs[0];
        evidence.trace.steps.assign(reversed.rbegin(), reversed.rend());
        evidence.trace.deadlocked = true;
        return evidence;
      }
      for (const auto& [step, to] : exploration.edges[at]) {
        if (!inside[to] || seen[to]) continue;
        seen[to] = true;
        parent[to] = {at, step};
        frontier.push_back(to);
      }
    }
  }

  // Otherwise look for a cycle: iterative DFS over the subgraph; the first
  // back edge (in successor order) closes the reported lasso.
  enum class Color { White, Grey, Black };
  std::vector<Color> color(exploration.configs.size(), Color::White);
  struct Frame {
    std::size_t node = 0;
    std::size_t next_child = 0;
    /// Step that reached this node from the frame below; empty at the root.
    std::optional<Step> entered_by;
  };
  std::vector<Frame> stack{Frame{}};
  color[0] = Color::Grey;
  while (!stack.empty()) {
    Frame& frame = stack.back();
    const auto& outgoing = exploration.edges[frame.node];
    bool descended = false;
    while (frame.next_child < outgoing.size()) {
      const auto& [step, to] = outgoing[frame.next_child++];
      if (!inside[to]) continue;
      if (color[to] == Color::Grey) {
        // Lasso: the DFS stack spells the stem plus the loop body; the
        // closing step returns to `to`, which sits at some stack position.
        evidence.found = true;
        evidence.trace.initial = exploration.configs[0];
        for (std::size_t depth = 1; depth < stack.size(); ++depth) {
          evidence.trace.steps.push_back(
              {*stack[depth].entered_by, exploration.configs[stack[depth].node]});
        }
        evidence.trace.steps.push_back({step, exploration.configs[to]});
        for (std::size_t depth = 0; depth < stack.size(); ++depth) {
          if (stack[depth].node == to) evidence.lasso_start = depth;
        }
        return evidence;
      }
      if (color[to] == Color::White) {
        color[to] = Color::Grey;
        stack.push_back(Frame{to, 0, step});
        descended = true;
        break;
      }
    }
    if (descended) continue;  // `frame` may dangle after push_back
    color[frame.node] = Color::Black;
    stack.pop_back();
  }
  return evidence;
}

std::vector<bool> negate(std::vector<bool> values) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = !values[i];
  return values;
}

}  // namespace

Verdict check(const Network&, const Exploration& exploration,
              const BoundQuery& query) {
  const auto started = std::chrono::steady_clock::now();
  Verdict verdict;
  const std::vector<bool> holds = evaluate_everywhere(exploration, query.body);

  switch (query.quantifier) {
    case Quantifier::ExistsEventually: {
      const auto witness = first_satisfying(holds);
      verdict.satisfied = witness.has_value();
      if (witness) verdict.trace = exploration.trace_to(*witness);
      break;
    }
    case Quantifier::ForAllGlobally: {
      const auto violation = first_satisfying(negate(holds));
      verdict.satisfied = !violation.has_value();
      if (violation) verdict.trace = exploration.trace_to(*violation);
      break;
    }
    case Quantifier::ExistsGlobally: {
      Evidence evidence = exists_globally(exploration, holds);
      verdict.satisfied = evidence.found;
      if (evidence.found) {
        verdict.trace = std::move(evidence.trace);
        verdict.lasso_start = evidence.lasso_start;
      }
      break;
    }
    case Quantifier::ForAllEventually: {
      Evidence evidence = exists_globally(exploration, negate(holds));
      verdict.satisfied = !evidence.found;
      if (evidence.found) {
        verdict.trace = std::move(evidence.trace);
        verdict.lasso_start = evidence.lasso_start;
      }
      break;
    }
  }

  verdict.stats.states_explored = exploration.configs.size();
  for (const auto& outgoing : exploration.edges) {
    verdict.stats.transitions += outgoing.size();
  }
  verdict.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                started)
          .count();
  return verdict;
}

Verdict check(const Network& network, const BoundQuery& query) {
  return check(network, explore(network), query);
}

std::vector<Verdict> check_suite(const Network& network,
                                 const std::vector<Query>& queries) {
  std::vector<BoundQuery> bound;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    try {
      bound.push_back(bind(queries[i], network));
    } catch (const BindError& error) {
      throw BindError("query #" + std::to_string(i + 1) + ": " + error.what());
    }
  }
  const Exploration exploration = explore(network);
  std::vector<Verdict> verdicts;
  for (const BoundQuery& query : bound) {
    verdicts.push_back(check(network, exploration, query));
  }
  return verdicts;
}

Verdict deadlock_freedom(const Network& network) {
  return check(network, bind(parse_query("A[] not deadlock"), network));
}

}  // namespace privbeh

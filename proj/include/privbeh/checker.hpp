#pragma once

#include <optional>
#include <vector>

#include "privbeh/query.hpp"
#include "privbeh/semantics.hpp"

namespace privbeh {

struct CheckStats {
  std::size_t states_explored = 0;
  std::size_t transitions = 0;
  /// Informational only; excluded from all byte-deterministic output.
  double wall_ms = 0.0;
};

/// Decision plus evidence. A trace is present when it proves something:
/// E<> satisfied (shortest witness), A[] violated (shortest counterexample),
/// E[] satisfied / A<> violated (maximal-path evidence: either a path ending
/// in deadlock, or a lasso whose final configuration re-enters the one at
/// step index `lasso_start`).
struct Verdict {
  bool satisfied = false;
  std::optional<Trace> trace;
  std::optional<std::size_t> lasso_start;
  CheckStats stats;
};

/// Decides a bound query over the exhaustively explored state space.
/// Maximal-path semantics: paths are infinite or end in a deadlocked
/// configuration, so E[]φ holds along a φ-path into a deadlock as well as
/// around a φ-cycle.
Verdict check(const Network& network, const BoundQuery& query);

/// Same, reusing an existing exploration of the network.
Verdict check(const Network& network, const Exploration& exploration,
              const BoundQuery& query);

/// Binds and checks the queries in order against one shared exploration.
/// The first unbindable query aborts with a BindError naming its position;
/// verdicts are independent otherwise.
std::vector<Verdict> check_suite(const Network& network,
                                 const std::vector<Query>& queries);

/// A[] not deadlock; the counterexample (when violated) is the shortest
/// path to a deadlocked configuration.
Verdict deadlock_freedom(const Network& network);

}  // namespace privbeh

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "privbeh/semantics.hpp"

namespace privbeh {

/// State-formula tree over location atoms, variable comparisons and the
/// `deadlock` atom. Atoms hold names until bound against a network.
class StateFormula {
 public:
  enum class Kind { LocationAtom, VarCmp, Deadlock, And, Or, Not };

  /// Defaults to `deadlock` (no natural neutral element; always rebuilt by
  /// the parser or factories).
  StateFormula();

  static StateFormula location(std::string process, std::string loc);
  static StateFormula var_cmp(std::string var, CmpOp op, int constant);
  static StateFormula deadlock();
  static StateFormula conj(StateFormula lhs, StateFormula rhs);
  static StateFormula disj(StateFormula lhs, StateFormula rhs);
  static StateFormula negation(StateFormula operand);

  Kind kind() const;
  /// LocationAtom accessors.
  const std::string& process() const;
  const std::string& location_name() const;
  /// VarCmp accessors.
  const std::string& variable() const;
  CmpOp op() const;
  int constant() const;
  /// Children for And/Or (both) and Not (lhs).
  StateFormula lhs() const;
  StateFormula rhs() const;

  /// Canonical concrete syntax; parse round-trips to the same tree.
  std::string str() const;

 private:
  struct Node;
  explicit StateFormula(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
};

enum class Quantifier { ExistsEventually, ForAllGlobally, ExistsGlobally, ForAllEventually };

std::string quantifier_token(Quantifier quantifier);

struct Query {
  Quantifier quantifier = Quantifier::ExistsEventually;
  StateFormula body;

  std::string str() const;
};

/// Parses `E<>|A[]|E[]|A<>` followed by a state formula. Keywords
/// (and/or/not/deadlock) are case-insensitive, identifiers case-sensitive.
/// The leads-to form `p --> q` is rejected as unsupported.
Query parse_query(std::string_view text);
StateFormula parse_state_formula(std::string_view text);

/// Same tree shape with atoms resolved: location atoms to (process index,
/// location index), variable comparisons checked against declarations.
class BoundFormula {
 public:
  StateFormula::Kind kind() const;
  std::size_t process_index() const;
  std::size_t location_index() const;
  const std::string& variable() const;
  CmpOp op() const;
  int constant() const;
  BoundFormula lhs() const;
  BoundFormula rhs() const;

  /// True iff the formula mentions the deadlock atom anywhere.
  bool mentions_deadlock() const;

 private:
  friend BoundFormula bind_formula(const StateFormula&, const Network&);
  struct Node;
  explicit BoundFormula(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
};

struct BoundQuery {
  Quantifier quantifier = Quantifier::ExistsEventually;
  BoundFormula body;
};

/// Resolution: process names and aliases exactly, location names and aliases
/// case-insensitively. Unknown names raise BindError listing candidates.
BoundFormula bind_formula(const StateFormula& formula, const Network& network);
BoundQuery bind(const Query& query, const Network& network);

/// Pure evaluation; `deadlocked` supplies the value of the deadlock atom so
/// callers that already explored the graph need not recompute successors.
bool eval_formula(const BoundFormula& formula, const Configuration& config,
                  bool deadlocked);

}  // namespace privbeh

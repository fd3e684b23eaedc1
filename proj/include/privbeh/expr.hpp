#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "privbeh/errors.hpp"

namespace privbeh {

/// Bounded integer variable declaration.
struct VariableDecl {
  std::string name;
  int min = 0;
  int max = 0;
  int init = 0;
};

/// Assignment of integer values to variable names. Iteration order is the
/// map's key order, which keeps every derived artifact deterministic.
struct Valuation {
  std::map<std::string, int> values;

  bool contains(const std::string& name) const { return values.count(name) != 0; }
  int get(const std::string& name) const;
  void set(const std::string& name, int value) { values[name] = value; }

  bool operator==(const Valuation&) const = default;
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view cmp_op_token(CmpOp op);
bool cmp_op_eval(CmpOp op, int lhs, int rhs);
/// Mirror of the operator across the comparison, so `3 < x` can be stored
/// as `x > 3`.
CmpOp cmp_op_flipped(CmpOp op);

/// Immutable boolean expression over integer variables: atoms are
/// `var cmp constant` and the literal `true`; connectives are and/or/not.
class GuardExpr {
 public:
  enum class Kind { True, Cmp, And, Or, Not };

  /// Default-constructed guard is the literal `true`.
  GuardExpr();

  static GuardExpr literal_true();
  static GuardExpr cmp(std::string var, CmpOp op, int constant);
  static GuardExpr conj(GuardExpr lhs, GuardExpr rhs);
  static GuardExpr disj(GuardExpr lhs, GuardExpr rhs);
  static GuardExpr negation(GuardExpr operand);

  Kind kind() const;
  bool is_literal_true() const { return kind() == Kind::True; }

  // Cmp accessors; only valid when kind() == Kind::Cmp.
  const std::string& variable() const;
  CmpOp op() const;
  int constant() const;

  // Child accessors for And/Or (lhs/rhs) and Not (lhs).
  GuardExpr lhs() const;
  GuardExpr rhs() const;

  bool evaluate(const Valuation& valuation) const;
  void collect_variables(std::set<std::string>& out) const;

  /// Canonical text form; parse_guard(str()) reproduces the same tree.
  std::string str() const;

  bool structurally_equal(const GuardExpr& other) const;

 private:
  struct Node;
  explicit GuardExpr(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
};

/// One additive term of a linear expression: `coeff * var`, or a plain
/// constant when `var` is empty.
struct LinearTerm {
  int coeff = 0;
  std::string var;

  bool operator==(const LinearTerm&) const = default;
};

struct LinearExpr {
  std::vector<LinearTerm> terms;

  static LinearExpr constant(int value);
  static LinearExpr variable(std::string name);

  int evaluate(const Valuation& valuation) const;
  void collect_variables(std::set<std::string>& out) const;
  std::string str() const;

  bool operator==(const LinearExpr&) const = default;
};

struct Assignment {
  std::string var;
  LinearExpr expr;

  bool operator==(const Assignment&) const = default;
};

/// Ordered list of assignments, applied left to right.
struct UpdateStmt {
  std::vector<Assignment> assignments;

  bool empty() const { return assignments.empty(); }
  void collect_variables(std::set<std::string>& out) const;
  std::string str() const;

  bool operator==(const UpdateStmt&) const = default;
};

/// Evaluates a guard; total once every referenced variable is present.
bool eval_guard(const GuardExpr& guard, const Valuation& valuation);

/// Applies the assignments left to right. Any resulting value outside its
/// declared range raises BoundsError; nothing is clamped silently.
Valuation apply_update(const UpdateStmt& update, const Valuation& valuation,
                       const std::vector<VariableDecl>& decls);

// Expression-string parsers shared by model files and tests. Comparison
// atoms accept the constant on either side (`1 <= day` is stored as
// `day >= 1`).
GuardExpr parse_guard(std::string_view text);
UpdateStmt parse_update(std::string_view text);

}  // namespace privbeh

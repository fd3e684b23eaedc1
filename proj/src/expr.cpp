#include "privbeh/expr.hpp"

#include <sstream>

#include "lexer.hpp"

namespace privbeh {

int Valuation::get(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) {
    throw ModelError("variable '" + name + "' not present in valuation");
  }
  return it->second;
}

std::string_view cmp_op_token(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  throw ModelError("invalid comparison operator");
}

bool cmp_op_eval(CmpOp op, int lhs, int rhs) {
  switch (op) {
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Gt: return lhs > rhs;
    case CmpOp::Ge: return lhs >= rhs;
  }
  throw ModelError("invalid comparison operator");
}

CmpOp cmp_op_flipped(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return CmpOp::Eq;
    case CmpOp::Ne: return CmpOp::Ne;
    case CmpOp::Lt: return CmpOp::Gt;
    case CmpOp::Le: return CmpOp::Ge;
    case CmpOp::Gt: return CmpOp::Lt;
    case CmpOp::Ge: return CmpOp::Le;
  }
  throw ModelError("invalid comparison operator");
}

struct GuardExpr::Node {
  Kind kind = Kind::True;
  std::string var;
  CmpOp op = CmpOp::Eq;
  int constant = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

GuardExpr::GuardExpr() {
  static const auto node = std::make_shared<const Node>();
  root_ = node;
}
GuardExpr::GuardExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

GuardExpr GuardExpr::literal_true() { return GuardExpr(); }

GuardExpr GuardExpr::cmp(std::string var, CmpOp op, int constant) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Cmp;
  node->var = std::move(var);
  node->op = op;
  node->constant = constant;
  return GuardExpr(std::move(node));
}

GuardExpr GuardExpr::conj(GuardExpr lhs, GuardExpr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->a = std::move(lhs.root_);
  node->b = std::move(rhs.root_);
  return GuardExpr(std::move(node));
}

GuardExpr GuardExpr::disj(GuardExpr lhs, GuardExpr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->a = std::move(lhs.root_);
  node->b = std::move(rhs.root_);
  return GuardExpr(std::move(node));
}

GuardExpr GuardExpr::negation(GuardExpr operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->a = std::move(operand.root_);
  return GuardExpr(std::move(node));
}

GuardExpr::Kind GuardExpr::kind() const { return root_->kind; }
const std::string& GuardExpr::variable() const { return root_->var; }
CmpOp GuardExpr::op() const { return root_->op; }
int GuardExpr::constant() const { return root_->constant; }
GuardExpr GuardExpr::lhs() const { return GuardExpr(root_->a); }
GuardExpr GuardExpr::rhs() const { return GuardExpr(root_->b); }

bool GuardExpr::evaluate(const Valuation& valuation) const {
  switch (root_->kind) {
    case Kind::True: return true;
    case Kind::Cmp: return cmp_op_eval(root_->op, valuation.get(root_->var), root_->constant);
    case Kind::And: return lhs().evaluate(valuation) && rhs().evaluate(valuation);
    case Kind::Or: return lhs().evaluate(valuation) || rhs().evaluate(valuation);
    case Kind::Not: return !lhs().evaluate(valuation);
  }
  throw ModelError("invalid guard node");
}

void GuardExpr::collect_variables(std::set<std::string>& out) const {
  switch (root_->kind) {
    case Kind::True: return;
    case Kind::Cmp: out.insert(root_->var); return;
    case Kind::And:
    case Kind::Or:
      lhs().collect_variables(out);
      rhs().collect_variables(out);
      return;
    case Kind::Not: lhs().collect_variables(out); return;
  }
}

namespace {

// Precedence: or (1) < and (2) < not (3) < atoms.
void print_guard(const GuardExpr& g, std::ostream& os, int parent_prec) {
  auto paren = [&](int prec, auto&& body) {
    const bool need = prec < parent_prec;
    if (need) os << "(";
    body(prec);
    if (need) os << ")";
  };
  switch (g.kind()) {
    case GuardExpr::Kind::True:
      os << "true";
      return;
    case GuardExpr::Kind::Cmp:
      os << g.variable() << " " << cmp_op_token(g.op()) << " " << g.constant();
      return;
    case GuardExpr::Kind::Or:
      paren(1, [&](int prec) {
        print_guard(g.lhs(), os, prec);
        os << " or ";
        print_guard(g.rhs(), os, prec + 1);
      });
      return;
    case GuardExpr::Kind::And:
      paren(2, [&](int prec) {
        print_guard(g.lhs(), os, prec);
        os << " and ";
        print_guard(g.rhs(), os, prec + 1);
      });
      return;
    case GuardExpr::Kind::Not:
      os << "not ";
      print_guard(g.lhs(), os, 3);
      return;
  }
}

}  // namespace

std::string GuardExpr::str() const {
  std::ostringstream os;
  print_guard(*this, os, 0);
  return os.str();
}

bool GuardExpr::structurally_equal(const GuardExpr& other) const {
  if (root_ == other.root_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::True: return true;
    case Kind::Cmp:
      return variable() == other.variable() && op() == other.op() &&
             constant() == other.constant();
    case Kind::And:
    case Kind::Or:
      return lhs().structurally_equal(other.lhs()) && rhs().structurally_equal(other.rhs());
    case Kind::Not: return lhs().structurally_equal(other.lhs());
  }
  return false;
}

LinearExpr LinearExpr::constant(int value) { return {{LinearTerm{value, ""}}}; }
LinearExpr LinearExpr::variable(std::string name) { return {{LinearTerm{1, std::move(name)}}}; }

int LinearExpr::evaluate(const Valuation& valuation) const {
  int sum = 0;
  for (const auto& term : terms) {
    sum += term.var.empty() ? term.coeff : term.coeff * valuation.get(term.var);
  }
  return sum;
}

void LinearExpr::collect_variables(std::set<std::string>& out) const {
  for (const auto& term : terms) {
    if (!term.var.empty()) out.insert(term.var);
  }
}

std::string LinearExpr::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& term = terms[i];
    int coeff = term.coeff;
    if (i == 0) {
      if (coeff < 0) os << "-";
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    const int mag = coeff < 0 ? -coeff : coeff;
    if (term.var.empty()) {
      os << mag;
    } else if (mag == 1) {
      os << term.var;
    } else {
      os << mag << " * " << term.var;
    }
  }
  return os.str();
}

void UpdateStmt::collect_variables(std::set<std::string>& out) const {
  for (const auto& assignment : assignments) {
    out.insert(assignment.var);
    assignment.expr.collect_variables(out);
  }
}

std::string UpdateStmt::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (i > 0) os << ", ";
    os << assignments[i].var << " := " << assignments[i].expr.str();
  }
  return os.str();
}

bool eval_guard(const GuardExpr& guard, const Valuation& valuation) {
  return guard.evaluate(valuation);
}

Valuation apply_update(const UpdateStmt& update, const Valuation& valuation,
                       const std::vector<VariableDecl>& decls) {
  Valuation result = valuation;
  for (const auto& assignment : update.assignments) {
    const VariableDecl* decl = nullptr;
    for (const auto& d : decls) {
      if (d.name == assignment.var) {
        decl = &d;
        break;
      }
    }
    if (decl == nullptr) {
      throw ModelError("assignment to undeclared variable '" + assignment.var + "'");
    }
    const int value = assignment.expr.evaluate(result);
    if (value < decl->min || value > decl->max) {
      throw BoundsError(assignment.var, value, decl->min, decl->max,
                        assignment.var + " := " + assignment.expr.str());
    }
    result.set(assignment.var, value);
  }
  return result;
}

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenCursor;

std::optional<CmpOp> cmp_of(Tok kind) {
  switch (kind) {
    case Tok::EqEq: return CmpOp::Eq;
    case Tok::Ne: return CmpOp::Ne;
    case Tok::Lt: return CmpOp::Lt;
    case Tok::Le: return CmpOp::Le;
    case Tok::Gt: return CmpOp::Gt;
    case Tok::Ge: return CmpOp::Ge;
    default: return std::nullopt;
  }
}

int parse_int(TokenCursor& cur) {
  bool negative = false;
  if (cur.peek().kind == Tok::Minus) {
    cur.next();
    negative = true;
  }
  const Token tok = cur.expect(Tok::Int, "integer constant");
  const long value = std::stol(tok.text);
  return static_cast<int>(negative ? -value : value);
}

GuardExpr parse_guard_disj(TokenCursor& cur);

GuardExpr parse_guard_atom(TokenCursor& cur) {
  const Token& tok = cur.peek();
  if (tok.kind == Tok::LParen) {
    cur.next();
    GuardExpr inner = parse_guard_disj(cur);
    cur.expect(Tok::RParen, "')'");
    return inner;
  }
  if (detail::is_keyword(tok, "true")) {
    cur.next();
    return GuardExpr::literal_true();
  }
  if (tok.kind == Tok::Ident) {
    const Token name = cur.next();
    const auto op = cmp_of(cur.peek().kind);
    if (!op) {
      throw ParseError("expected comparison operator after '" + name.text + "'",
                       cur.peek().pos);
    }
    cur.next();
    return GuardExpr::cmp(name.text, *op, parse_int(cur));
  }
  if (tok.kind == Tok::Int || tok.kind == Tok::Minus) {
    // Constant-first comparison: store mirrored, e.g. 1 <= day as day >= 1.
    const int constant = parse_int(cur);
    const auto op = cmp_of(cur.peek().kind);
    if (!op) {
      throw ParseError("expected comparison operator after constant", cur.peek().pos);
    }
    cur.next();
    const Token name = cur.expect(Tok::Ident, "variable name");
    return GuardExpr::cmp(name.text, cmp_op_flipped(*op), constant);
  }
  throw ParseError(tok.kind == Tok::End ? "unexpected end of input"
                                        : "unexpected token '" + tok.text + "'",
                   tok.pos);
}

GuardExpr parse_guard_unary(TokenCursor& cur) {
  if (detail::is_keyword(cur.peek(), "not")) {
    cur.next();
    return GuardExpr::negation(parse_guard_unary(cur));
  }
  return parse_guard_atom(cur);
}

GuardExpr parse_guard_conj(TokenCursor& cur) {
  GuardExpr left = parse_guard_unary(cur);
  while (detail::is_keyword(cur.peek(), "and")) {
    cur.next();
    left = GuardExpr::conj(std::move(left), parse_guard_unary(cur));
  }
  return left;
}

GuardExpr parse_guard_disj(TokenCursor& cur) {
  GuardExpr left = parse_guard_conj(cur);
  while (detail::is_keyword(cur.peek(), "or")) {
    cur.next();
    left = GuardExpr::disj(std::move(left), parse_guard_conj(cur));
  }
  return left;
}

LinearTerm parse_linear_term(TokenCursor& cur, int sign) {
  const Token& tok = cur.peek();
  if (tok.kind == Tok::Int) {
    const int value = parse_int(cur);
    if (cur.peek().kind == Tok::Star) {
      cur.next();
      const Token name = cur.expect(Tok::Ident, "variable name after '*'");
      return {sign * value, name.text};
    }
    return {sign * value, ""};
  }
  if (tok.kind == Tok::Ident) {
    return {sign, cur.next().text};
  }
  throw ParseError(tok.kind == Tok::End ? "unexpected end of input in expression"
                                        : "unexpected token '" + tok.text + "'",
                   tok.pos);
}

LinearExpr parse_linear(TokenCursor& cur) {
  LinearExpr expr;
  int sign = 1;
  if (cur.peek().kind == Tok::Minus) {
    cur.next();
    sign = -1;
  }
  expr.terms.push_back(parse_linear_term(cur, sign));
  while (cur.peek().kind == Tok::Plus || cur.peek().kind == Tok::Minus) {
    sign = cur.next().kind == Tok::Plus ? 1 : -1;
    expr.terms.push_back(parse_linear_term(cur, sign));
  }
  return expr;
}

}  // namespace

GuardExpr parse_guard(std::string_view text) {
  TokenCursor cur(text);
  if (cur.done()) return GuardExpr::literal_true();
  GuardExpr guard = parse_guard_disj(cur);
  if (!cur.done()) {
    throw ParseError("unexpected trailing token '" + cur.peek().text + "'", cur.peek().pos);
  }
  return guard;
}

UpdateStmt parse_update(std::string_view text) {
  TokenCursor cur(text);
  UpdateStmt update;
  if (cur.done()) return update;
  while (true) {
    const Token name = cur.expect(Tok::Ident, "variable name");
    cur.expect(Tok::Assign, "':='");
    update.assignments.push_back({name.text, parse_linear(cur)});
    if (cur.peek().kind != Tok::Comma) break;
    cur.next();
  }
  if (!cur.done()) {
    throw ParseError("unexpected trailing token '" + cur.peek().text + "'", cur.peek().pos);
  }
  return update;
}

}  // namespace privbeh

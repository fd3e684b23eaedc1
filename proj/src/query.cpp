#include "privbeh/query.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace privbeh {

struct StateFormula::Node {
  Kind kind = Kind::Deadlock;
  std::string process;
  std::string location;
  std::string var;
  CmpOp op = CmpOp::Eq;
  int constant = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

StateFormula::StateFormula() {
  static const auto node = std::make_shared<const Node>();
  root_ = node;
}

StateFormula::StateFormula(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

StateFormula StateFormula::location(std::string process, std::string loc) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::LocationAtom;
  node->process = std::move(process);
  node->location = std::move(loc);
  return StateFormula(std::move(node));
}

StateFormula StateFormula::var_cmp(std::string var, CmpOp op, int constant) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::VarCmp;
  node->var = std::move(var);
  node->op = op;
  node->constant = constant;
  return StateFormula(std::move(node));
}

StateFormula StateFormula::deadlock() { return StateFormula(); }

StateFormula StateFormula::conj(StateFormula lhs, StateFormula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->a = std::move(lhs.root_);
  node->b = std::move(rhs.root_);
  return StateFormula(std::move(node));
}

StateFormula StateFormula::disj(StateFormula lhs, StateFormula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->a = std::move(lhs.root_);
  node->b = std::move(rhs.root_);
  return StateFormula(std::move(node));
}

StateFormula StateFormula::negation(StateFormula operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->a = std::move(operand.root_);
  return StateFormula(std::move(node));
}

StateFormula::Kind StateFormula::kind() const { return root_->kind; }
const std::string& StateFormula::process() const { return root_->process; }
const std::string& StateFormula::location_name() const { return root_->location; }
const std::string& StateFormula::variable() const { return root_->var; }
CmpOp StateFormula::op() const { return root_->op; }
int StateFormula::constant() const { return root_->constant; }

StateFormula StateFormula::lhs() const {
  if (!root_->a) throw ParseError("formula node has no left child", 0);
  return StateFormula(root_->a);
}

StateFormula StateFormula::rhs() const {
  if (!root_->b) throw ParseError("formula node has no right child", 0);
  return StateFormula(root_->b);
}

namespace {

// Precedence: or 1 < and 2 < not 3; atoms bind tightest.
std::string print_formula(const StateFormula& formula, int parent_prec) {
  int prec = 4;
  std::string text;
  switch (formula.kind()) {
    case StateFormula::Kind::LocationAtom:
      text = formula.process() + "." + formula.location_name();
      break;
    case StateFormula::Kind::VarCmp:
      text = formula.variable() + " " + std::string(cmp_op_token(formula.op())) +
             " " + std::to_string(formula.constant());
      break;
    case StateFormula::Kind::Deadlock:
      text = "deadlock";
      break;
    case StateFormula::Kind::And:
      prec = 2;
      text = print_formula(formula.lhs(), 2) + " and " + print_formula(formula.rhs(), 2);
      break;
    case StateFormula::Kind::Or:
      prec = 1;
      text = print_formula(formula.lhs(), 1) + " or " + print_formula(formula.rhs(), 1);
      break;
    case StateFormula::Kind::Not:
      prec = 3;
      text = "not " + print_formula(formula.lhs(), 3);
      break;
  }
  if (prec < parent_prec) return "(" + text + ")";
  return text;
}

}  // namespace

std::string StateFormula::str() const { return print_formula(*this, 0); }

std::string quantifier_token(Quantifier quantifier) {
  switch (quantifier) {
    case Quantifier::ExistsEventually: return "E<>";
    case Quantifier::ForAllGlobally: return "A[]";
    case Quantifier::ExistsGlobally: return "E[]";
    case Quantifier::ForAllEventually: return "A<>";
  }
  throw ParseError("invalid quantifier", 0);
}

std::string Query::str() const { return quantifier_token(quantifier) + " " + body.str(); }

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenCursor;

CmpOp cmp_from_token(Tok kind) {
  switch (kind) {
    case Tok::Lt: return CmpOp::Lt;
    case Tok::Le: return CmpOp::Le;
    case Tok::Gt: return CmpOp::Gt;
    case Tok::Ge: return CmpOp::Ge;
    case Tok::EqEq: return CmpOp::Eq;
    case Tok::Ne: return CmpOp::Ne;
    default: throw ParseError("not a comparison operator", 0);
  }
}

bool is_cmp_token(Tok kind) {
  return kind == Tok::Lt || kind == Tok::Le || kind == Tok::Gt || kind == Tok::Ge ||
         kind == Tok::EqEq || kind == Tok::Ne;
}

int parse_int_token(const Token& token) {
  try {
    return std::stoi(token.text);
  } catch (const std::exception&) {
    throw ParseError("integer literal '" + token.text + "' out of range", token.pos);
  }
}

StateFormula parse_disjunction(TokenCursor& cursor);

StateFormula parse_atom(TokenCursor& cursor) {
  const Token& token = cursor.peek();
  if (token.kind == Tok::LParen) {
    cursor.next();
    StateFormula inside = parse_disjunction(cursor);
    cursor.expect(Tok::RParen, "')'");
    return inside;
  }
  if (detail::is_keyword(token, "deadlock")) {
    cursor.next();
    return StateFormula::deadlock();
  }
  if (token.kind == Tok::Int) {
    // Flipped comparison: 2 > counter is stored as counter < 2.
    const int constant = parse_int_token(cursor.next());
    const Token& op = cursor.peek();
    if (!is_cmp_token(op.kind)) {
      throw ParseError("expected comparison operator after integer", op.pos);
    }
    const CmpOp flipped = cmp_op_flipped(cmp_from_token(cursor.next().kind));
    const Token name = cursor.expect(Tok::Ident, "variable name");
    return StateFormula::var_cmp(name.text, flipped, constant);
  }
  if (token.kind == Tok::Ident) {
    const Token name = cursor.next();
    if (cursor.peek().kind == Tok::Dot) {
      cursor.next();
      const Token location = cursor.expect(Tok::Ident, "location name");
      return StateFormula::location(name.text, location.text);
    }
    if (is_cmp_token(cursor.peek().kind)) {
      const CmpOp op = cmp_from_token(cursor.next().kind);
      const Token constant = cursor.expect(Tok::Int, "integer constant");
      return StateFormula::var_cmp(name.text, op, parse_int_token(constant));
    }
    throw ParseError("expected '.' or comparison after '" + name.text + "'", token.pos);
  }
  throw ParseError(token.kind == Tok::End
                       ? "expected formula at end of input"
                       : "unexpected '" + token.text + "' in formula",
                   token.pos);
}

StateFormula parse_unary(TokenCursor& cursor) {
  if (detail::is_keyword(cursor.peek(), "not")) {
    cursor.next();
    return StateFormula::negation(parse_unary(cursor));
  }
  return parse_atom(cursor);
}

StateFormula parse_conjunction(TokenCursor& cursor) {
  StateFormula result = parse_unary(cursor);
  while (detail::is_keyword(cursor.peek(), "and")) {
    cursor.next();
    result = StateFormula::conj(std::move(result), parse_unary(cursor));
  }
  return result;
}

StateFormula parse_disjunction(TokenCursor& cursor) {
  StateFormula result = parse_conjunction(cursor);
  while (detail::is_keyword(cursor.peek(), "or")) {
    cursor.next();
    result = StateFormula::disj(std::move(result), parse_conjunction(cursor));
  }
  return result;
}

StateFormula parse_formula_text(TokenCursor& cursor) {
  StateFormula formula = parse_disjunction(cursor);
  if (cursor.peek().kind == Tok::Arrow) {
    throw ParseError("the leads-to operator 'p --> q' is not supported; "
                     "check the two sides separately",
                     cursor.peek().pos);
  }
  if (!cursor.done()) {
    throw ParseError("unexpected '" + cursor.peek().text + "' after formula",
                     cursor.peek().pos);
  }
  return formula;
}

}  // namespace

StateFormula parse_state_formula(std::string_view text) {
  TokenCursor cursor(text);
  return parse_formula_text(cursor);
}

Query parse_query(std::string_view text) {
  // The quantifier glyphs (E<>, A[]) are read off the raw text; everything
  // after them goes through the shared tokenizer.
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i + 3 > text.size()) {
    throw ParseError("expected quantifier (E<>, A[], E[], A<>)", i);
  }
  const char head = text[i];
  const std::string_view rest = text.substr(i + 1, 2);
  Query query;
  if (head == 'E' && rest == "<>") {
    query.quantifier = Quantifier::ExistsEventually;
  } else if (head == 'A' && rest == "[]") {
    query.quantifier = Quantifier::ForAllGlobally;
  } else if (head == 'E' && rest == "[]") {
    query.quantifier = Quantifier::ExistsGlobally;
  } else if (head == 'A' && rest == "<>") {
    query.quantifier = Quantifier::ForAllEventually;
  } else {
    throw ParseError("expected quantifier (E<>, A[], E[], A<>)", i);
  }
  TokenCursor cursor(text.substr(i + 3));
  query.body = parse_formula_text(cursor);
  return query;
}

struct BoundFormula::Node {
  StateFormula::Kind kind = StateFormula::Kind::Deadlock;
  std::size_t process = 0;
  std::size_t location = 0;
  std::string var;
  CmpOp op = CmpOp::Eq;
  int constant = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

BoundFormula::BoundFormula(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

StateFormula::Kind BoundFormula::kind() const { return root_->kind; }
std::size_t BoundFormula::process_index() const { return root_->process; }
std::size_t BoundFormula::location_index() const { return root_->location; }
const std::string& BoundFormula::variable() const { return root_->var; }
CmpOp BoundFormula::op() const { return root_->op; }
int BoundFormula::constant() const { return root_->constant; }

BoundFormula BoundFormula::lhs() const {
  if (!root_->a) throw BindError("bound formula node has no left child");
  return BoundFormula(root_->a);
}

BoundFormula BoundFormula::rhs() const {
  if (!root_->b) throw BindError("bound formula node has no right child");
  return BoundFormula(root_->b);
}

bool BoundFormula::mentions_deadlock() const {
  switch (kind()) {
    case StateFormula::Kind::Deadlock: return true;
    case StateFormula::Kind::And:
    case StateFormula::Kind::Or:
      return lhs().mentions_deadlock() || rhs().mentions_deadlock();
    case StateFormula::Kind::Not: return lhs().mentions_deadlock();
    default: return false;
  }
}

namespace {

std::string known_processes(const Network& network) {
  std::string names;
  for (const Automaton& process : network.processes) {
    if (!names.empty()) names += ", ";
    names += process.name;
    for (const std::string& alias : process.aliases) names += ", " + alias;
  }
  return names;
}

std::string known_locations(const Automaton& process) {
  std::string names;
  for (const Location& location : process.locations) {
    if (!names.empty()) names += ", ";
    names += location.name;
    for (const std::string& alias : location.aliases) names += ", " + alias;
  }
  return names;
}

std::string known_variables(const Network& network) {
  if (network.variables.empty()) return "none declared";
  std::string names;
  for (const VariableDecl& decl : network.variables) {
    if (!names.empty()) names += ", ";
    names += decl.name;
  }
  return names;
}

}  // namespace

BoundFormula bind_formula(const StateFormula& formula, const Network& network) {
  auto node = std::make_shared<BoundFormula::Node>();
  node->kind = formula.kind();
  switch (formula.kind()) {
    case StateFormula::Kind::LocationAtom: {
      const auto process = network.find_process(formula.process());
      if (!process) {
        throw BindError("unknown process '" + formula.process() +
                        "'; known processes: " + known_processes(network));
      }
      const auto location =
          network.processes[*process].resolve_location(formula.location_name());
      if (!location) {
        throw BindError("process '" + network.processes[*process].name +
                        "' has no location '" + formula.location_name() +
                        "'; known locations: " +
                        known_locations(network.processes[*process]));
      }
      node->process = *process;
      node->location = *location;
      break;
    }
    case StateFormula::Kind::VarCmp: {
      if (!network.find_variable(formula.variable())) {
        throw BindError("unknown variable '" + formula.variable() +
                        "'; known variables: " + known_variables(network));
      }
      node->var = formula.variable();
      node->op = formula.op();
      node->constant = formula.constant();
      break;
    }
    case StateFormula::Kind::Deadlock:
      break;
    case StateFormula::Kind::And:
    case StateFormula::Kind::Or: {
      BoundFormula lhs = bind_formula(formula.lhs(), network);
      BoundFormula rhs = bind_formula(formula.rhs(), network);
      node->a = lhs.root_;
      node->b = rhs.root_;
      break;
    }
    case StateFormula::Kind::Not: {
      BoundFormula operand = bind_formula(formula.lhs(), network);
      node->a = operand.root_;
      break;
    }
  }
  return BoundFormula(std::move(node));
}

BoundQuery bind(const Query& query, const Network& network) {
  return {query.quantifier, bind_formula(query.body, network)};
}

bool eval_formula(const BoundFormula& formula, const Configuration& config,
                  bool deadlocked) {
  switch (formula.kind()) {
    case StateFormula::Kind::LocationAtom:
      return config.locations[formula.process_index()] == formula.location_index();
    case StateFormula::Kind::VarCmp:
      return cmp_op_eval(formula.op(), config.valuation.get(formula.variable()),
                         formula.constant());
    case StateFormula::Kind::Deadlock:
      return deadlocked;
    case StateFormula::Kind::And:
      return eval_formula(formula.lhs(), config, deadlocked) &&
             eval_formula(formula.rhs(), config, deadlocked);
    case StateFormula::Kind::Or:
      return eval_formula(formula.lhs(), config, deadlocked) ||
             eval_formula(formula.rhs(), config, deadlocked);
    case StateFormula::Kind::Not:
      return !eval_formula(formula.lhs(), config, deadlocked);
  }
  throw BindError("invalid formula node");
}

}  // namespace privbeh

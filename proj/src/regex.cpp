#include "privbeh/regex.hpp"

#include <algorithm>

namespace privbeh {

bool is_symbol(char c) {
  return std::find(kAlphabet.begin(), kAlphabet.end(), c) != kAlphabet.end();
}

struct Regex::Node {
  Kind kind = Kind::EmptyLanguage;
  char symbol = '\0';
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

Regex::Regex() {
  static const auto node = std::make_shared<const Node>();
  root_ = node;
}

Regex::Regex(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

Regex Regex::empty_language() { return Regex(); }

Regex Regex::epsilon() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Epsilon;
  return Regex(std::move(node));
}

Regex Regex::symbol(char s) {
  if (!is_symbol(s)) {
    throw SynthesisError(std::string("symbol '") + s + "' is not in the alphabet");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Symbol;
  node->symbol = s;
  return Regex(std::move(node));
}

Regex Regex::concat(Regex lhs, Regex rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Concat;
  node->a = std::move(lhs.root_);
  node->b = std::move(rhs.root_);
  return Regex(std::move(node));
}

Regex Regex::union_of(Regex lhs, Regex rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Union;
  node->a = std::move(lhs.root_);
  node->b = std::move(rhs.root_);
  return Regex(std::move(node));
}

Regex Regex::star(Regex operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Star;
  node->a = std::move(operand.root_);
  return Regex(std::move(node));
}

Regex Regex::word(std::string_view text) {
  if (text.empty()) return epsilon();
  Regex result = symbol(text[0]);
  for (std::size_t i = 1; i < text.size(); ++i) {
    result = concat(std::move(result), symbol(text[i]));
  }
  return result;
}

Regex::Kind Regex::kind() const { return root_->kind; }

char Regex::symbol_value() const {
  if (root_->kind != Kind::Symbol) throw SynthesisError("not a symbol node");
  return root_->symbol;
}

Regex Regex::lhs() const {
  if (!root_->a) throw SynthesisError("regex node has no left child");
  return Regex(root_->a);
}

Regex Regex::rhs() const {
  if (!root_->b) throw SynthesisError("regex node has no right child");
  return Regex(root_->b);
}

namespace {

// Precedence: union 1 < concat 2 < star 3.
std::string print_regex(const Regex& regex, int parent_prec) {
  int prec = 0;
  std::string text;
  switch (regex.kind()) {
    case Regex::Kind::EmptyLanguage:
      prec = 3;
      text = "0";
      break;
    case Regex::Kind::Epsilon:
      prec = 3;
      text = "1";
      break;
    case Regex::Kind::Symbol:
      prec = 3;
      text = std::string(1, regex.symbol_value());
      break;
    case Regex::Kind::Concat:
      prec = 2;
      text = print_regex(regex.lhs(), 2) + print_regex(regex.rhs(), 2);
      break;
    case Regex::Kind::Union:
      prec = 1;
      text = print_regex(regex.lhs(), 1) + "+" + print_regex(regex.rhs(), 1);
      break;
    case Regex::Kind::Star:
      prec = 3;
      text = print_regex(regex.lhs(), 3) + "*";
      break;
  }
  if (prec < parent_prec) return "(" + text + ")";
  return text;
}

}  // namespace

std::string Regex::str() const { return print_regex(*this, 0); }

std::set<std::size_t> Nfa::epsilon_closure(const std::set<std::size_t>& states) const {
  std::set<std::size_t> closure = states;
  std::vector<std::size_t> pending(states.begin(), states.end());
  while (!pending.empty()) {
    const std::size_t state = pending.back();
    pending.pop_back();
    for (const std::size_t next : eps[state]) {
      if (closure.insert(next).second) pending.push_back(next);
    }
  }
  return closure;
}

bool Nfa::accepts(std::string_view word) const {
  std::set<std::size_t> current = epsilon_closure({initial});
  for (const char symbol : word) {
    std::set<std::size_t> moved;
    for (const std::size_t state : current) {
      const auto it = delta[state].find(symbol);
      if (it == delta[state].end()) continue;
      moved.insert(it->second.begin(), it->second.end());
    }
    if (moved.empty()) return false;
    current = epsilon_closure(moved);
  }
  return std::any_of(current.begin(), current.end(),
                     [&](std::size_t state) { return accepting.count(state) > 0; });
}

namespace {

// Incremental Thompson builder; every fragment has one entry and one exit.
struct NfaBuilder {
  Nfa nfa;

  std::size_t fresh() {
    nfa.eps.emplace_back();
    nfa.delta.emplace_back();
    return nfa.state_count++;
  }

  void add_eps(std::size_t from, std::size_t to) { nfa.eps[from].push_back(to); }

  void add_symbol(std::size_t from, char symbol, std::size_t to) {
    nfa.delta[from][symbol].push_back(to);
  }

  struct Fragment {
    std::size_t entry;
    std::size_t exit;
  };

  Fragment build(const Regex& regex) {
    switch (regex.kind()) {
      case Regex::Kind::EmptyLanguage: {
        const std::size_t entry = fresh();
        const std::size_t exit = fresh();
        return {entry, exit};
      }
      case Regex::Kind::Epsilon: {
        const std::size_t entry = fresh();
        const std::size_t exit = fresh();
        add_eps(entry, exit);
        return {entry, exit};
      }
      case Regex::Kind::Symbol: {
        const std::size_t entry = fresh();
        const std::size_t exit = fresh();
        add_symbol(entry, regex.symbol_value(), exit);
        return {entry, exit};
      }
      case Regex::Kind::Concat: {
        const Fragment lhs = build(regex.lhs());
        const Fragment rhs = build(regex.rhs());
        add_eps(lhs.exit, rhs.entry);
        return {lhs.entry, rhs.exit};
      }
      case Regex::Kind::Union: {
        const std::size_t entry = fresh();
        const Fragment lhs = build(regex.lhs());
        const Fragment rhs = build(regex.rhs());
        const std::size_t exit = fresh();
        add_eps(entry, lhs.entry);
        add_eps(entry, rhs.entry);
        add_eps(lhs.exit, exit);
        add_eps(rhs.exit, exit);
        return {entry, exit};
      }
      case Regex::Kind::Star: {
        const std::size_t entry = fresh();
        const Fragment body = build(regex.lhs());
        const std::size_t exit = fresh();
        add_eps(entry, body.entry);
        add_eps(entry, exit);
        add_eps(body.exit, body.entry);
        add_eps(body.exit, exit);
        return {entry, exit};
      }
    }
    throw SynthesisError("invalid regex node");
  }
};

}  // namespace

Nfa compile_regex(const Regex& regex) {
  NfaBuilder builder;
  const NfaBuilder::Fragment fragment = builder.build(regex);
  builder.nfa.initial = fragment.entry;
  builder.nfa.accepting = {fragment.exit};
  return std::move(builder.nfa);
}

}  // namespace privbeh

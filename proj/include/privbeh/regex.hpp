#pragma once

#include <array>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "privbeh/errors.hpp"

namespace privbeh {

/// Disclosure alphabet: information type {h,f,r}, trust source {A..D},
/// recipient role {a..d}. The order here is the canonical symbol order used
/// everywhere determinism matters (subset construction, state naming).
inline constexpr std::array<char, 11> kAlphabet = {'h', 'f', 'r', 'A', 'B', 'C',
                                                   'D', 'a', 'b', 'c', 'd'};

bool is_symbol(char c);

/// Immutable regular-expression tree. Star is representable but the record
/// encoder never produces it; words are plain concatenations.
class Regex {
 public:
  enum class Kind { EmptyLanguage, Epsilon, Symbol, Concat, Union, Star };

  /// Defaults to the empty language.
  Regex();

  static Regex empty_language();
  static Regex epsilon();
  static Regex symbol(char s);
  static Regex concat(Regex lhs, Regex rhs);
  static Regex union_of(Regex lhs, Regex rhs);
  static Regex star(Regex operand);
  /// Concatenation of the word's symbols; epsilon for the empty word.
  static Regex word(std::string_view text);

  Kind kind() const;
  /// Only valid when kind() == Kind::Symbol.
  char symbol_value() const;
  /// Children: lhs for Star/Concat/Union, rhs for Concat/Union.
  Regex lhs() const;
  Regex rhs() const;

  /// Kleene-algebra notation: 0 empty, 1 epsilon, + union, juxtaposition,
  /// postfix *.
  std::string str() const;

 private:
  struct Node;
  explicit Regex(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
};

/// Thompson-style NFA with epsilon moves. States are dense indices.
struct Nfa {
  std::size_t state_count = 0;
  std::size_t initial = 0;
  /// Per state: epsilon successors.
  std::vector<std::vector<std::size_t>> eps;
  /// Per state: symbol -> successors.
  std::vector<std::map<char, std::vector<std::size_t>>> delta;
  std::set<std::size_t> accepting;

  bool accepts(std::string_view word) const;
  std::set<std::size_t> epsilon_closure(const std::set<std::size_t>& states) const;
};

/// Thompson construction; the result accepts exactly the regex language.
Nfa compile_regex(const Regex& regex);

}  // namespace privbeh

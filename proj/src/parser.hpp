#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "ldl/calculus.hpp"
#include "ldl/error.hpp"
#include "ldl/formula.hpp"

namespace ldl::detail {

/// Recursive-descent reader for the ASCII formula and sequent grammar:
///
///   sequent ::= [formula {',' formula}] '|-' formula
///   formula ::= conj {'|' conj}          (one n-ary disjunction)
///   conj    ::= primary {'&' primary}    (left-nested)
///   primary ::= 'T' | 'F' | atom | '(' formula ')'
class Reader {
 public:
  Reader(std::string_view text, const Calculus& calc) : text_(text), calc_(calc) {}

  std::size_t position() const { return pos_; }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool peek_turnstile() {
    skip_space();
    return text_.substr(pos_, 2) == "|-";
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  /// A run of identifier characters (used for rule names and atoms).
  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  Formula formula() {
    std::vector<Formula> parts;
    const std::size_t start = position();
    parts.push_back(conjunction());
    while (peek() == '|' && !peek_turnstile()) {
      ++pos_;
      parts.push_back(conjunction());
    }
    if (parts.size() == 1) return parts.front();
    try {
      return mk_disj(std::move(parts), calc_);
    } catch (const DisjointnessViolation& e) {
      throw DisjointnessViolation(std::string(e.what()) + " (disjunction at position " + std::to_string(start) + ")", e.first(),
                                  e.second());
    }
  }

  Sequent sequent() {
    std::vector<Formula> gamma;
    if (!peek_turnstile()) {
      gamma.push_back(formula());
      while (accept(',')) gamma.push_back(formula());
    }
    if (!peek_turnstile()) fail("expected '|-'");
    pos_ += 2;
    Formula phi = formula();
    return Sequent(std::move(gamma), std::move(phi));
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Formula conjunction() {
    Formula acc = primary();
    while (accept('&')) acc = Formula::conj(acc, primary());
    return acc;
  }

  Formula primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Formula inner = formula();
      expect(')');
      return inner;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
    const std::size_t start = pos_;
    std::string name = word();
    if (name == "T") return Formula::top();
    if (name == "F") return Formula::bottom();
    if (!calc_.find_atom(name)) {
      pos_ = start;
      throw UnknownAtom(name);
    }
    return Formula::atom(std::move(name));
  }

  std::string_view text_;
  const Calculus& calc_;
  std::size_t pos_ = 0;
};

}  // namespace ldl::detail

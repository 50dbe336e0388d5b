#include "ldl/formula.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "ldl/calculus.hpp"
#include "ldl/error.hpp"
#include "parser.hpp"
#include "text_util.hpp"

namespace ldl {

std::vector<std::size_t> AtomSet::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

bool lex_less(AtomSet a, AtomSet b) {
  std::uint64_t x = a.bits_;
  std::uint64_t y = b.bits_;
  while (x != 0 && y != 0) {
    const int i = std::countr_zero(x);
    const int j = std::countr_zero(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

// ---------------------------------------------------------------------------
// Formula nodes

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Kind kind, std::string name, std::vector<Formula> children) {
  std::size_t size = 1;
  std::size_t h = mix(0, static_cast<std::size_t>(kind));
  h = mix(h, std::hash<std::string>{}(name));
  for (const Formula& c : children) {
    size += c.size();
    h = mix(h, c.hash());
  }
  return Formula(std::make_shared<const Node>(Node{kind, std::move(name), std::move(children), size, h}));
}

Formula Formula::top() {
  static const Formula t = make(Kind::Top, {}, {});
  return t;
}

Formula Formula::bottom() {
  static const Formula f = make(Kind::Bottom, {}, {});
  return f;
}

Formula Formula::atom(std::string name) {
  if (!is_valid_atom_name(name)) throw PreconditionViolated("invalid atom name '" + name + "'");
  return make(Kind::Atom, std::move(name), {});
}

Formula Formula::conj(Formula lhs, Formula rhs) { return make(Kind::Conj, {}, {std::move(lhs), std::move(rhs)}); }

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  const auto ca = a.children();
  const auto cb = b.children();
  return std::lexicographical_compare_three_way(ca.begin(), ca.end(), cb.begin(), cb.end());
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == 0;
}

Formula mk_disj(std::vector<Formula> parts, const Calculus& calc) {
  if (parts.empty()) throw PreconditionViolated("mk_disj needs at least one part");
  if (parts.size() == 1) return std::move(parts.front());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!calc.entails({parts[i], parts[j]}, Formula::bottom())) {
        throw DisjointnessViolation("disjuncts " + std::to_string(i) + " ('" + print_formula(parts[i]) + "') and " +
                                        std::to_string(j) + " ('" + print_formula(parts[j]) + "') are not disjoint",
                                    i, j);
      }
    }
  }
  return Formula::make(Formula::Kind::Disj, {}, std::move(parts));
}

Formula conj_all(std::span<const Formula> parts) {
  if (parts.empty()) return Formula::top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Sequent::Sequent(std::vector<Formula> antecedent, Formula succedent)
    : antecedent_(std::move(antecedent)), succedent_(std::move(succedent)) {
  std::sort(antecedent_.begin(), antecedent_.end());
  antecedent_.erase(std::unique(antecedent_.begin(), antecedent_.end()), antecedent_.end());
}

bool Sequent::contains(const Formula& f) const { return std::binary_search(antecedent_.begin(), antecedent_.end(), f); }

// ---------------------------------------------------------------------------
// Text

Formula parse_formula(std::string_view text, const Calculus& calc) {
  detail::Reader r(text, calc);
  Formula f = r.formula();
  if (!r.at_end()) r.fail("trailing input");
  return f;
}

Sequent parse_sequent(std::string_view text, const Calculus& calc) {
  detail::Reader r(text, calc);
  Sequent s = r.sequent();
  if (!r.at_end()) r.fail("trailing input");
  return s;
}

namespace {

void print_into(std::string& out, const Formula& f) {
  auto child = [&out](const Formula& c, bool parens) {
    if (parens) out += '(';
    print_into(out, c);
    if (parens) out += ')';
  };
  switch (f.kind()) {
    case Formula::Kind::Top:
      out += 'T';
      break;
    case Formula::Kind::Bottom:
      out += 'F';
      break;
    case Formula::Kind::Atom:
      out += f.name();
      break;
    case Formula::Kind::Conj:
      child(f.lhs(), f.lhs().is_disj());
      out += " & ";
      child(f.rhs(), f.rhs().is_disj() || f.rhs().is_conj());
      break;
    case Formula::Kind::Disj: {
      bool first = true;
      for (const Formula& c : f.children()) {
        if (!first) out += " | ";
        first = false;
        child(c, c.is_disj());
      }
      break;
    }
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(out, f);
  return out;
}

std::string print_sequent(const Sequent& s) {
  std::string out;
  bool first = true;
  for (const Formula& g : s.antecedent()) {
    if (!first) out += ", ";
    first = false;
    print_into(out, g);
  }
  out += out.empty() ? "|- " : " |- ";
  print_into(out, s.succedent());
  return out;
}

// ---------------------------------------------------------------------------
// Bases

bool is_valid_atom_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  if (name == "T" || name == "F") return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

DisjunctiveBasis DisjunctiveBasis::make(std::vector<std::string> atoms, std::vector<std::vector<std::string>> axioms) {
  for (const std::string& a : atoms) {
    if (!is_valid_atom_name(a)) throw InputError("invalid atom name '" + a + "'");
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  if (atoms.size() > AtomSet::kCapacity) throw InputError("too many atoms (limit " + std::to_string(AtomSet::kCapacity) + ")");
  for (auto& ax : axioms) {
    if (ax.empty()) throw InputError("empty axiom (it would make T |- F valid)");
    for (const std::string& a : ax) {
      if (!std::binary_search(atoms.begin(), atoms.end(), a)) throw InputError("axiom uses undeclared atom '" + a + "'");
    }
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
  }
  std::sort(axioms.begin(), axioms.end());
  axioms.erase(std::unique(axioms.begin(), axioms.end()), axioms.end());
  return DisjunctiveBasis{std::move(atoms), std::move(axioms)};
}

DisjunctiveBasis parse_basis(std::string_view text) {
  std::vector<std::string> atoms;
  std::vector<std::vector<std::string>> axioms;
  std::size_t line_no = 0;
  for (const auto& words : detail::word_lines(text)) {
    ++line_no;
    if (words.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (words[0] == "atom") {
      if (words.size() < 2) throw InputError(where + "'atom' needs a name");
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (!is_valid_atom_name(words[i])) throw InputError(where + "invalid atom name '" + words[i] + "'");
        atoms.push_back(words[i]);
      }
    } else if (words[0] == "axiom") {
      if (words.size() < 2) throw InputError(where + "empty axiom (it would make T |- F valid)");
      axioms.emplace_back(words.begin() + 1, words.end());
    } else {
      throw InputError(where + "unknown directive '" + words[0] + "'");
    }
  }
  return DisjunctiveBasis::make(std::move(atoms), std::move(axioms));
}

DisjunctiveBasis load_basis(const std::string& path) {
  try {
    return parse_basis(detail::read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string print_basis(const DisjunctiveBasis& basis) {
  std::ostringstream out;
  for (const std::string& a : basis.atoms) out << "atom " << a << '\n';
  for (const auto& ax : basis.axioms) {
    out << "axiom";
    for (const std::string& a : ax) out << ' ' << a;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Products and flat forms

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Tautology:
      return "tautology";
    case Classification::Contradiction:
      return "contradiction";
    case Classification::Satisfiable:
      return "satisfiable";
  }
  return "?";
}

std::vector<AtomSet> multiply_products(std::span<const AtomSet> lhs, std::span<const AtomSet> rhs, const Calculus& calc) {
  std::vector<AtomSet> out;
  out.reserve(lhs.size() * rhs.size());
  for (AtomSet a : lhs) {
    for (AtomSet b : rhs) {
      const AtomSet u = a | b;
      if (!calc.is_contradictory(u)) out.push_back(u);
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<AtomSet> conjunctive_products(const Formula& f, const Calculus& calc) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return {AtomSet{}};
    case Formula::Kind::Bottom:
      return {};
    case Formula::Kind::Atom: {
      const AtomSet a = AtomSet::single(calc.atom_index(f.name()));
      if (calc.is_contradictory(a)) return {};
      return {a};
    }
    case Formula::Kind::Conj: {
      const auto l = conjunctive_products(f.lhs(), calc);
      if (l.empty()) return {};
      const auto r = conjunctive_products(f.rhs(), calc);
      return multiply_products(l, r, calc);
    }
    case Formula::Kind::Disj: {
      std::vector<std::vector<AtomSet>> parts;
      for (const Formula& c : f.children()) parts.push_back(conjunctive_products(c, calc));
      std::vector<AtomSet> out;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          for (AtomSet a : parts[i]) {
            for (AtomSet b : parts[j]) {
              if (!calc.is_contradictory(a | b)) {
                throw DisjointnessViolation("disjuncts " + std::to_string(i) + " and " + std::to_string(j) + " of '" +
                                                print_formula(f) + "' are not disjoint",
                                            i, j);
              }
            }
          }
        }
        out.insert(out.end(), parts[i].begin(), parts[i].end());
      }
      std::sort(out.begin(), out.end(), lex_less);
      return out;
    }
  }
  return {};
}

FlatForm flatten(const Formula& f, const Calculus& calc) {
  std::vector<AtomSet> prods = calc.products(f);
  if (prods.empty()) return FlatForm{FlatForm::Kind::ContradictionEquivalent, {}};
  const AtomSet top[] = {AtomSet{}};
  if (calc.covers(top, prods)) return FlatForm{FlatForm::Kind::TautologyEquivalent, {}};
  FlatForm out{FlatForm::Kind::Flat, {}};
  for (AtomSet a : prods) out.disjuncts.push_back(ConjunctionClass{a});
  std::sort(out.disjuncts.begin(), out.disjuncts.end());
  return out;
}

Classification classify(const Formula& f, const Calculus& calc) {
  const std::vector<AtomSet> prods = calc.products(f);
  if (prods.empty()) return Classification::Contradiction;
  const AtomSet top[] = {AtomSet{}};
  if (calc.covers(top, prods)) return Classification::Tautology;
  return Classification::Satisfiable;
}

Formula conjunction_formula(AtomSet atoms, const Calculus& calc) {
  std::vector<Formula> parts;
  for (std::size_t i : atoms.indices()) parts.push_back(Formula::atom(calc.atoms().at(i)));
  return conj_all(parts);
}

Formula flat_formula(const FlatForm& flat, const Calculus& calc) {
  switch (flat.kind) {
    case FlatForm::Kind::TautologyEquivalent:
      return Formula::top();
    case FlatForm::Kind::ContradictionEquivalent:
      return Formula::bottom();
    case FlatForm::Kind::Flat:
      break;
  }
  std::vector<Formula> parts;
  for (const ConjunctionClass& c : flat.disjuncts) parts.push_back(conjunction_formula(c.atoms, calc));
  return mk_disj(std::move(parts), calc);
}

std::string print_flat(const FlatForm& flat, const Calculus& calc) {
  switch (flat.kind) {
    case FlatForm::Kind::TautologyEquivalent:
      return "tautology-equivalent";
    case FlatForm::Kind::ContradictionEquivalent:
      return "contradiction-equivalent";
    case FlatForm::Kind::Flat:
      break;
  }
  std::string out;
  for (const ConjunctionClass& c : flat.disjuncts) {
    if (!out.empty()) out += " | ";
    bool first = true;
    for (std::size_t i : c.atoms.indices()) {
      if (!first) out += " & ";
      first = false;
      out += calc.atoms().at(i);
    }
  }
  return out;
}

}  // namespace ldl

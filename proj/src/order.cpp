#include "ldl/order.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "ldl/error.hpp"
#include "text_util.hpp"

namespace ldl {

std::vector<std::size_t> elements_of(ElementSet set) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(std::popcount(set)));
  while (set != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(set)));
    set &= set - 1;
  }
  return out;
}

FinitePoset::FinitePoset(std::vector<std::string> ids, const std::vector<std::vector<bool>>& leq) : ids_(std::move(ids)) {
  const std::size_t n = ids_.size();
  if (n > kMaxElements) throw SizeLimit("posets are limited to " + std::to_string(kMaxElements) + " elements");
  if (leq.size() != n) throw InputError("order matrix has " + std::to_string(leq.size()) + " rows for " + std::to_string(n) + " elements");
  up_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[i].size() != n) throw InputError("order matrix row " + std::to_string(i) + " has the wrong length");
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i][j]) up_[i] |= element_bit(j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq[i][i]) throw InputError("order is not reflexive at '" + ids_[i] + "'");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i])
        throw InputError("order is not antisymmetric: '" + ids_[i] + "' and '" + ids_[j] + "'");
      if (!leq[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (leq[j][k] && !leq[i][k])
          throw InputError("order is not transitive: '" + ids_[i] + "' <= '" + ids_[j] + "' <= '" + ids_[k] + "'");
    }
  }
  finish();
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> ids, std::span<const std::pair<std::size_t, std::size_t>> covers) {
  const std::size_t n = ids.size();
  if (n > kMaxElements) throw SizeLimit("posets are limited to " + std::to_string(kMaxElements) + " elements");
  FinitePoset p;
  p.ids_ = std::move(ids);
  p.up_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) p.up_[i] = element_bit(i);
  for (auto [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw InputError("cover refers to an undeclared element");
    p.up_[lo] |= element_bit(hi);
  }
  // Warshall closure on the bit rows.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if ((p.up_[i] >> k) & 1U) p.up_[i] |= p.up_[k];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p.leq(i, j) && p.leq(j, i))
        throw InputError("covers form a cycle through '" + p.ids_[i] + "' and '" + p.ids_[j] + "'");
  p.finish();
  return p;
}

void FinitePoset::finish() {
  const std::size_t n = ids_.size();
  down_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : elements_of(up_[i])) down_[j] |= element_bit(i);
  bottom_ = least(all());
}

ElementSet FinitePoset::all() const {
  return ids_.size() == 64 ? ~ElementSet{0} : element_bit(ids_.size()) - 1;
}

std::optional<std::size_t> FinitePoset::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return i;
  return std::nullopt;
}

ElementSet FinitePoset::up_closure(ElementSet xs) const {
  ElementSet out = 0;
  for (std::size_t x : elements_of(xs)) out |= up_[x];
  return out;
}

ElementSet FinitePoset::upper_bounds(ElementSet xs) const {
  ElementSet out = all();
  for (std::size_t x : elements_of(xs)) out &= up_[x];
  return out;
}

ElementSet FinitePoset::minimal(ElementSet xs) const {
  ElementSet out = 0;
  for (std::size_t x : elements_of(xs))
    if ((down_[x] & xs) == element_bit(x)) out |= element_bit(x);
  return out;
}

ElementSet FinitePoset::maximal(ElementSet xs) const {
  ElementSet out = 0;
  for (std::size_t x : elements_of(xs))
    if ((up_[x] & xs) == element_bit(x)) out |= element_bit(x);
  return out;
}

std::optional<std::size_t> FinitePoset::least(ElementSet xs) const {
  for (std::size_t x : elements_of(xs))
    if ((up_[x] & xs) == xs) return x;
  return std::nullopt;
}

std::optional<std::size_t> FinitePoset::greatest(ElementSet xs) const {
  for (std::size_t x : elements_of(xs))
    if ((down_[x] & xs) == xs) return x;
  return std::nullopt;
}

std::optional<std::size_t> FinitePoset::supremum(ElementSet xs) const { return least(upper_bounds(xs)); }

bool FinitePoset::pairwise_inconsistent(ElementSet xs) const {
  const auto elems = elements_of(xs);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (consistent(elems[i], elems[j])) return false;
  return true;
}

bool FinitePoset::is_upper_set(ElementSet xs) const { return up_closure(xs) == xs; }

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    const ElementSet strictly_above = up_[i] & ~element_bit(i);
    for (std::size_t j : elements_of(minimal(strictly_above))) out.emplace_back(i, j);
  }
  return out;
}

Verdict is_l_domain(const FinitePoset& p) {
  if (p.size() == 0) return Verdict::fail("empty poset has no least element");
  if (!p.bottom()) return Verdict::fail("no least element");
  for (std::size_t x = 0; x < p.size(); ++x) {
    const ElementSet ideal = p.down(x);
    const auto elems = elements_of(ideal);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        const std::size_t a = elems[i];
        const std::size_t b = elems[j];
        const ElementSet ubs = p.up(a) & p.up(b) & ideal;
        if (!p.least(ubs))
          return Verdict::fail("down(" + p.id(x) + ") is not a lattice: '" + p.id(a) + "' and '" + p.id(b) + "' have no join in it");
        const ElementSet lbs = p.down(a) & p.down(b);
        if (!p.greatest(lbs))
          return Verdict::fail("down(" + p.id(x) + ") is not a lattice: '" + p.id(a) + "' and '" + p.id(b) + "' have no meet in it");
      }
    }
  }
  return Verdict::pass(
      "pointed and every principal ideal is a lattice; the carrier is finite, so every element is compact and "
      "the dcpo and algebraicity conditions hold vacuously");
}

std::vector<std::size_t> minimal_upper_bounds(const FinitePoset& p, std::span<const std::size_t> xs) {
  ElementSet set = 0;
  for (std::size_t x : xs) set |= element_bit(x);
  return elements_of(p.minimal(p.upper_bounds(set)));
}

std::optional<DecomposableSet> as_decomposable(const FinitePoset& p, ElementSet members) {
  if (members == 0) return DecomposableSet{DecomposableSet::Kind::Empty, 0, 0};
  if (members == p.all()) return DecomposableSet{DecomposableSet::Kind::Whole, 0, members};
  if (!p.is_upper_set(members)) return std::nullopt;
  const ElementSet gens = p.minimal(members);
  if (!p.pairwise_inconsistent(gens)) return std::nullopt;
  return DecomposableSet{DecomposableSet::Kind::Generated, gens, members};
}

namespace {

void extend_inconsistent(const FinitePoset& p, const std::vector<std::size_t>& candidates, std::size_t from, ElementSet chosen,
                         std::vector<DecomposableSet>& out, std::size_t limit) {
  for (std::size_t k = from; k < candidates.size(); ++k) {
    const std::size_t e = candidates[k];
    bool ok = true;
    for (std::size_t c : elements_of(chosen))
      if (p.consistent(c, e)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    const ElementSet next = chosen | element_bit(e);
    out.push_back({DecomposableSet::Kind::Generated, next, p.up_closure(next)});
    if (out.size() > limit) throw SizeLimit("more than " + std::to_string(limit) + " decomposable sets");
    extend_inconsistent(p, candidates, k + 1, next, out, limit);
  }
}

}  // namespace

std::vector<DecomposableSet> decomposable_sets(const FinitePoset& p, std::size_t limit) {
  if (auto v = is_l_domain(p); !v) throw NotAnLDomain(v.diagnostic);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (i != *p.bottom()) candidates.push_back(i);
  std::vector<DecomposableSet> out;
  out.push_back({DecomposableSet::Kind::Empty, 0, 0});
  out.push_back({DecomposableSet::Kind::Whole, 0, p.all()});
  extend_inconsistent(p, candidates, 0, 0, out, limit);
  std::sort(out.begin(), out.end(), [](const DecomposableSet& a, const DecomposableSet& b) { return a.members < b.members; });
  return out;
}

std::string describe(const FinitePoset& p, const DecomposableSet& u) {
  switch (u.kind) {
    case DecomposableSet::Kind::Empty:
      return "Empty";
    case DecomposableSet::Kind::Whole:
      return "Whole";
    case DecomposableSet::Kind::Generated:
      break;
  }
  std::string out = "up{";
  bool first = true;
  for (std::size_t g : elements_of(u.generators)) {
    if (!first) out += ",";
    out += p.id(g);
    first = false;
  }
  return out + "}";
}

bool is_monotone(const FinitePoset& p, const FinitePoset& q, std::span<const std::size_t> f) {
  if (f.size() != p.size()) return false;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (f[x] >= q.size()) return false;
    for (std::size_t y : elements_of(p.up(x)))
      if (!q.leq(f[x], f[y])) return false;
  }
  return true;
}

namespace {

std::vector<std::size_t> linear_extension(const FinitePoset& p) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) order[i] = i;
  // Fewer elements below means earlier; ties by index keep the result stable.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(p.down(a)) < std::popcount(p.down(b));
  });
  return order;
}

void extend_map(const FinitePoset& p, const FinitePoset& q, const std::vector<std::size_t>& order, std::size_t k, MonotoneMap& f,
                std::vector<MonotoneMap>& out) {
  if (k == order.size()) {
    out.push_back(f);
    return;
  }
  const std::size_t x = order[k];
  // Everything strictly below x precedes it in the extension.
  ElementSet allowed = q.all();
  for (std::size_t w : elements_of(p.down(x) & ~element_bit(x))) allowed &= q.up(f[w]);
  for (std::size_t y : elements_of(allowed)) {
    f[x] = y;
    extend_map(p, q, order, k + 1, f, out);
  }
}

}  // namespace

std::vector<MonotoneMap> monotone_maps(const FinitePoset& p, const FinitePoset& q, std::size_t budget) {
  const double candidates = std::pow(static_cast<double>(q.size()), static_cast<double>(p.size()));
  if (candidates > static_cast<double>(budget))
    throw SizeLimit(std::to_string(q.size()) + "^" + std::to_string(p.size()) + " candidate maps exceed the budget of " +
                    std::to_string(budget));
  std::vector<MonotoneMap> out;
  if (p.size() == 0) {
    out.emplace_back();
    return out;
  }
  if (q.size() == 0) return out;
  MonotoneMap f(p.size(), 0);
  extend_map(p, q, linear_extension(p), 0, f, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool order_iso(const FinitePoset& p, const FinitePoset& q, std::span<const std::size_t> f) {
  if (f.size() != p.size() || p.size() != q.size()) return false;
  std::vector<bool> hit(q.size(), false);
  for (std::size_t y : f) {
    if (y >= q.size() || hit[y]) return false;
    hit[y] = true;
  }
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.leq(a, b) != q.leq(f[a], f[b])) return false;
  return true;
}

FinitePoset parse_poset(std::string_view text) {
  std::vector<std::string> ids;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  auto lookup = [&](const std::string& id, std::size_t line) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id) return i;
    throw InputError("line " + std::to_string(line) + ": undeclared element '" + id + "'");
  };
  const auto lines = detail::word_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto& w = lines[ln];
    if (w.empty()) continue;
    if (w[0] == "elem") {
      if (w.size() != 2) throw InputError("line " + std::to_string(ln + 1) + ": expected 'elem <id>'");
      if (std::find(ids.begin(), ids.end(), w[1]) != ids.end())
        throw InputError("line " + std::to_string(ln + 1) + ": duplicate element '" + w[1] + "'");
      ids.push_back(w[1]);
    } else if (w[0] == "cover") {
      if (w.size() != 3) throw InputError("line " + std::to_string(ln + 1) + ": expected 'cover <lo> <hi>'");
      covers.emplace_back(lookup(w[1], ln + 1), lookup(w[2], ln + 1));
    } else {
      throw InputError("line " + std::to_string(ln + 1) + ": unknown directive '" + w[0] + "'");
    }
  }
  if (ids.empty()) throw InputError("poset declares no elements");
  FinitePoset p = FinitePoset::from_covers(std::move(ids), covers);
  if (!p.bottom()) throw InputError("poset has no unique least element");
  return p;
}

FinitePoset load_poset(const std::string& path) { return parse_poset(detail::read_file(path)); }

std::string print_poset(const FinitePoset& p) {
  std::ostringstream out;
  for (const auto& id : p.ids()) out << "elem " << id << "\n";
  for (auto [lo, hi] : p.covers()) out << "cover " << p.id(lo) << " " << p.id(hi) << "\n";
  return out.str();
}

}  // namespace ldl

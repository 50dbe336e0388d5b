#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ldl {

/// Bitmask over the elements of one FinitePoset (bit i = element i).
using ElementSet = std::uint64_t;

constexpr ElementSet element_bit(std::size_t i) { return ElementSet{1} << i; }
std::vector<std::size_t> elements_of(ElementSet set);

/// Outcome of a yes/no check that explains a negative answer.
struct Verdict {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
  static Verdict pass(std::string note = {}) { return {true, std::move(note)}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

/// Explicit finite partial order.
///
/// In a finite poset every directed subset has a greatest element, so every
/// element is compact, every monotone map is Scott-continuous and a pointed
/// poset is automatically an algebraic dcpo.
class FinitePoset {
 public:
  static constexpr std::size_t kMaxElements = 64;

  /// `leq[i][j]` means element i ≤ element j. The relation must already be a
  /// partial order (no closure is applied); throws InputError otherwise.
  FinitePoset(std::vector<std::string> ids, const std::vector<std::vector<bool>>& leq);

  /// Reflexive-transitive closure of the cover pairs (lo, hi). Throws InputError
  /// if the closure is not antisymmetric.
  static FinitePoset from_covers(std::vector<std::string> ids, std::span<const std::pair<std::size_t, std::size_t>> covers);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  bool leq(std::size_t a, std::size_t b) const { return (up_[a] >> b) & 1U; }
  ElementSet up(std::size_t a) const { return up_[a]; }
  ElementSet down(std::size_t a) const { return down_[a]; }
  ElementSet all() const;
  /// The least element, if there is one.
  std::optional<std::size_t> bottom() const { return bottom_; }

  /// ↑X.
  ElementSet up_closure(ElementSet xs) const;
  /// ⋂ ↑x over x ∈ xs (the whole carrier for xs = ∅).
  ElementSet upper_bounds(ElementSet xs) const;
  ElementSet minimal(ElementSet xs) const;
  ElementSet maximal(ElementSet xs) const;
  /// Least element of `xs`, if any.
  std::optional<std::size_t> least(ElementSet xs) const;
  std::optional<std::size_t> greatest(ElementSet xs) const;
  /// Least upper bound of `xs` in the whole poset.
  std::optional<std::size_t> supremum(ElementSet xs) const;
  bool consistent(std::size_t a, std::size_t b) const { return (up_[a] & up_[b]) != 0; }
  bool pairwise_inconsistent(ElementSet xs) const;
  bool is_upper_set(ElementSet xs) const;

  /// Immediate-successor pairs (Hasse diagram), in index order.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  friend bool operator==(const FinitePoset&, const FinitePoset&) = default;

 private:
  FinitePoset() = default;
  void finish();

  std::vector<std::string> ids_;
  std::vector<ElementSet> up_;
  std::vector<ElementSet> down_;
  std::optional<std::size_t> bottom_;
};

/// Pointed, and every principal ideal ↓x is a lattice. For finite posets this
/// is exactly the algebraic L-domain condition; the dcpo and algebraicity
/// clauses hold vacuously, which the passing diagnostic records.
Verdict is_l_domain(const FinitePoset& p);

/// Minimal elements of ⋂ ↑x over xs; empty iff xs has no upper bound.
std::vector<std::size_t> minimal_upper_bounds(const FinitePoset& p, std::span<const std::size_t> xs);

/// ↑A for a pairwise-inconsistent set A of non-bottom elements, or one of the
/// two markers. `members` is the denoted subset of the carrier.
struct DecomposableSet {
  enum class Kind : std::uint8_t { Empty, Whole, Generated };

  Kind kind = Kind::Empty;
  ElementSet generators = 0;  // the antichain A (Generated only)
  ElementSet members = 0;

  friend bool operator==(const DecomposableSet&, const DecomposableSet&) = default;
};

/// Classifies an upper set as a decomposable set; nullopt if it is not one.
std::optional<DecomposableSet> as_decomposable(const FinitePoset& p, ElementSet members);

/// Every member of U(D), sorted by `members`: Empty, Whole and ↑A for each
/// nonempty pairwise-inconsistent A ⊆ D∖{⊥}. Requires an L-domain (throws
/// NotAnLDomain) and throws SizeLimit past `limit` sets.
std::vector<DecomposableSet> decomposable_sets(const FinitePoset& p, std::size_t limit = 1'000'000);

std::string describe(const FinitePoset& p, const DecomposableSet& u);

/// Map between posets as the list of images, indexed by source element.
using MonotoneMap = std::vector<std::size_t>;

bool is_monotone(const FinitePoset& p, const FinitePoset& q, std::span<const std::size_t> f);

/// Every order-preserving map p → q, in lexicographic order of the image
/// vectors. Throws SizeLimit if |q|^|p| exceeds `budget`.
std::vector<MonotoneMap> monotone_maps(const FinitePoset& p, const FinitePoset& q, std::size_t budget = 1'000'000);

/// f is a bijection and x ≤ y ⇔ f(x) ≤ f(y).
bool order_iso(const FinitePoset& p, const FinitePoset& q, std::span<const std::size_t> f);

/// `.pos` text: `elem <id>` lines then `cover <lo> <hi>` lines, `#` comments.
/// The loaded order is the reflexive-transitive closure of the covers and must
/// have a unique least element.
FinitePoset parse_poset(std::string_view text);
FinitePoset load_poset(const std::string& path);
/// Canonical `.pos` rendering (declarations in index order, Hasse covers).
std::string print_poset(const FinitePoset& p);

}  // namespace ldl

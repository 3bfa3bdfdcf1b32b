#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cubecalc {

class ChainComplex;

// A tuple of integers under the componentwise order. Entries may be -1
// where a construction allows the degenerate "empty" stage.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }
  int total() const;
  bool all_nonnegative() const;

  // Componentwise comparison.
  bool leq(const MultiIndex& other) const;
  std::string id() const;  // "(2,1)"

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> entries_;
};

MultiIndex parse_multi_index(const std::string& text);  // "2,1" or "(2,1)"
MultiIndex componentwise_min(const MultiIndex& a, const MultiIndex& b);

// Decrements the coordinates listed in `coords` (0-based). Coordinates that
// are already -1 are rejected.
MultiIndex jsubr(const MultiIndex& j, std::span<const std::size_t> coords);
// Same, with the coordinate set given as a bitmask.
MultiIndex jsubr_mask(const MultiIndex& j, std::uint32_t mask);

// A finite partial order on string ids.
//
// The relation is stored in one of two forms: a dense closure matrix for
// arbitrary posets, or per-element coordinate keys compared componentwise
// (bitmask inclusion or integer order) for the structured shapes built
// below. Both answer leq() in time independent of the poset size.
class FinitePoset {
 public:
  enum class CoordinateKind { subset, integer };

  FinitePoset() = default;

  // Builds the reflexive-transitive closure of `relations` and checks
  // antisymmetry. Ids must be unique.
  static FinitePoset from_relations(
      std::vector<std::string> ids,
      const std::vector<std::pair<std::string, std::string>>& relations);
  // Takes `leq` as already closed; verifies the partial order axioms.
  static FinitePoset from_closure(std::vector<std::string> ids,
                                  std::vector<std::vector<bool>> leq);
  // Elements compared coordinatewise through `keys`.
  static FinitePoset structured(std::vector<std::string> ids,
                                std::vector<std::vector<std::int64_t>> keys,
                                std::vector<CoordinateKind> kinds);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;  // throws on unknown id

  bool leq(std::size_t a, std::size_t b) const;
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

  // Keys for structured posets (empty for dense ones).
  const std::vector<std::int64_t>& key(std::size_t i) const;
  bool is_structured() const { return !kinds_.empty(); }

  FinitePoset opposite() const;
  // Full subposet on `members` (indices into this poset), in the given order.
  FinitePoset subposet(std::span<const std::size_t> members) const;
  FinitePoset product(const FinitePoset& other) const;

  std::optional<std::size_t> maximum() const;
  std::optional<std::size_t> minimum() const;
  std::vector<std::size_t> minimal_elements() const;
  std::vector<std::size_t> maximal_elements() const;

  // Exhaustive reflexivity / antisymmetry / transitivity check.
  bool check_partial_order() const;

  // All strict chains q0 < q1 < ... < qp, grouped by p.
  std::vector<std::vector<std::vector<std::size_t>>> strict_chains() const;

  // Sorted list of all pairs (a, b) with a <= b, by id.
  std::vector<std::pair<std::string, std::string>> sorted_relations() const;

  friend bool operator==(const FinitePoset& a, const FinitePoset& b);

 private:
  std::vector<std::string> ids_;
  std::map<std::string, std::size_t> index_;
  // Dense form.
  std::vector<std::vector<bool>> closure_;
  // Structured form.
  std::vector<std::vector<std::int64_t>> keys_;
  std::vector<CoordinateKind> kinds_;
  bool reversed_ = false;

  void build_index();
};

// Canonical id of a subset given as sorted labels: "{}", "{1,2}".
std::string subset_id(std::span<const int> labels);

// All subsets of `labels` ordered by inclusion. Element i is the subset with
// bitmask i over the positions of `labels`.
FinitePoset power_set_poset(std::span<const int> labels);
// Nonempty subsets; element i has bitmask i + 1.
FinitePoset punctured_cube(std::span<const int> labels);
// Product over i of punctured_cube({0..j_i}). Element keys are the per-
// coordinate bitmasks; ids join the factors with "x".
FinitePoset punctured_product(const MultiIndex& j);
// Full product of power sets {0..j_i}, including empty coordinates.
FinitePoset power_set_product(const MultiIndex& j);
// All k <= j (strict: additionally k != j). Keys are the tuples.
FinitePoset multidegree_downset(const MultiIndex& j, bool strict);
// All m-tuples of nonnegative integers with sum <= k.
FinitePoset total_degree_downset(int m, int k);

bool is_ideal(const FinitePoset& p, std::span<const std::string> members);
bool is_ideal_indices(const FinitePoset& p, std::span<const std::size_t> members);
std::vector<std::size_t> down_closure(const FinitePoset& p,
                                      std::span<const std::size_t> generators);

// A covering of a poset by ideals, as index sets into `poset`.
struct IdealCover {
  FinitePoset poset;
  std::vector<std::vector<std::size_t>> ideals;

  // Throws InputError unless every member is an ideal and the union is
  // everything.
  void validate() const;
  // Intersection over the cover members in `mask` (bit i = ideal i).
  std::vector<std::size_t> intersection(std::uint32_t mask) const;
};

struct IdentityCheck {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;
};

// Exhaustive set-level checks of the ideal covers used for layers and for
// comparing total-degree and multidegree towers.
std::vector<IdentityCheck> verify_cover_identities(int m, int bound);

// Simplicial chains over Z of the nerve (strict chains) of `p`.
ChainComplex order_complex(const FinitePoset& p);

}  // namespace cubecalc

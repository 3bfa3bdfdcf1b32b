#include "cubecalc/poset.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <functional>
#include <numeric>
#include <sstream>

#include "cubecalc/chain.hpp"
#include "cubecalc/errors.hpp"

namespace cubecalc {

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InputError("multi-index must have at least one entry");
  for (int e : entries_)
    if (e < -1) throw InputError("multi-index entries must be >= -1");
}

int MultiIndex::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0);
}

bool MultiIndex::all_nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e >= 0; });
}

bool MultiIndex::leq(const MultiIndex& other) const {
  if (size() != other.size()) throw InputError("multi-index length mismatch");
  for (std::size_t i = 0; i < size(); ++i)
    if (entries_[i] > other.entries_[i]) return false;
  return true;
}

std::string MultiIndex::id() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) out << (i ? "," : "") << entries_[i];
  out << ')';
  return out.str();
}

MultiIndex parse_multi_index(const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '(') body.erase(body.begin());
  if (!body.empty() && body.back() == ')') body.pop_back();
  std::vector<int> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("malformed multi-index '" + text + "'");
    }
  }
  return MultiIndex(std::move(out));
}

MultiIndex componentwise_min(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw InputError("multi-index length mismatch");
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return MultiIndex(std::move(out));
}

MultiIndex jsubr(const MultiIndex& j, std::span<const std::size_t> coords) {
  std::vector<int> out = j.entries();
  for (std::size_t c : coords) {
    if (c >= out.size()) throw InputError("coordinate out of range in jsubr");
    if (out[c] < 0) throw InputError("jsubr would decrement below -1");
  }
  std::vector<bool> hit(out.size(), false);
  for (std::size_t c : coords) hit[c] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (hit[i]) --out[i];
  return MultiIndex(std::move(out));
}

MultiIndex jsubr_mask(const MultiIndex& j, std::uint32_t mask) {
  std::vector<std::size_t> coords;
  for (std::size_t i = 0; i < j.size(); ++i)
    if (mask & (1u << i)) coords.push_back(i);
  return jsubr(j, coords);
}

// --------------------------------------------------------------- FinitePoset

void FinitePoset::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (!index_.emplace(ids_[i], i).second)
      throw InvariantError("duplicate poset element id '" + ids_[i] + "'");
}

FinitePoset FinitePoset::from_relations(
    std::vector<std::string> ids,
    const std::vector<std::pair<std::string, std::string>>& relations) {
  FinitePoset p;
  p.ids_ = std::move(ids);
  p.build_index();
  const std::size_t n = p.ids_.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [a, b] : relations) leq[p.index_of(a)][p.index_of(b)] = true;
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k][j]) leq[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i][j] && leq[j][i])
        throw InvariantError("relation is not antisymmetric: '" + p.ids_[i] +
                             "' and '" + p.ids_[j] + "' form a cycle");
  p.closure_ = std::move(leq);
  return p;
}

FinitePoset FinitePoset::from_closure(std::vector<std::string> ids,
                                      std::vector<std::vector<bool>> leq) {
  FinitePoset p;
  p.ids_ = std::move(ids);
  p.build_index();
  if (leq.size() != p.ids_.size())
    throw InvariantError("closure matrix size does not match element count");
  for (const auto& row : leq)
    if (row.size() != p.ids_.size()) throw InvariantError("closure matrix is not square");
  p.closure_ = std::move(leq);
  if (!p.check_partial_order())
    throw InvariantError("relation is not a partial order");
  return p;
}

FinitePoset FinitePoset::structured(std::vector<std::string> ids,
                                    std::vector<std::vector<std::int64_t>> keys,
                                    std::vector<CoordinateKind> kinds) {
  if (kinds.empty()) throw InvariantError("structured poset needs at least one coordinate");
  if (keys.size() != ids.size()) throw InvariantError("one key per element required");
  for (const auto& k : keys)
    if (k.size() != kinds.size()) throw InvariantError("key length mismatch");
  FinitePoset p;
  p.ids_ = std::move(ids);
  p.build_index();
  p.keys_ = std::move(keys);
  p.kinds_ = std::move(kinds);
  // Componentwise orders are antisymmetric only if keys are distinct.
  std::vector<std::vector<std::int64_t>> sorted = p.keys_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvariantError("structured poset has duplicate keys");
  return p;
}

std::optional<std::size_t> FinitePoset::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinitePoset::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown poset element '" + id + "'");
  return it->second;
}

bool FinitePoset::leq(std::size_t a, std::size_t b) const {
  if (reversed_) std::swap(a, b);
  if (kinds_.empty()) return closure_[a][b];
  const auto& ka = keys_[a];
  const auto& kb = keys_[b];
  for (std::size_t c = 0; c < kinds_.size(); ++c) {
    if (kinds_[c] == CoordinateKind::subset) {
      if ((ka[c] & ~kb[c]) != 0) return false;
    } else if (ka[c] > kb[c]) {
      return false;
    }
  }
  return true;
}

const std::vector<std::int64_t>& FinitePoset::key(std::size_t i) const {
  static const std::vector<std::int64_t> none;
  return kinds_.empty() ? none : keys_[i];
}

FinitePoset FinitePoset::opposite() const {
  FinitePoset p = *this;
  p.reversed_ = !reversed_;
  return p;
}

FinitePoset FinitePoset::subposet(std::span<const std::size_t> members) const {
  std::vector<std::string> ids;
  for (std::size_t m : members) ids.push_back(ids_.at(m));
  if (!kinds_.empty()) {
    std::vector<std::vector<std::int64_t>> keys;
    for (std::size_t m : members) keys.push_back(keys_[m]);
    FinitePoset p = structured(std::move(ids), std::move(keys), kinds_);
    p.reversed_ = reversed_;
    return p;
  }
  std::vector<std::vector<bool>> leq(members.size(), std::vector<bool>(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) leq[i][j] = this->leq(members[i], members[j]);
  return from_closure(std::move(ids), std::move(leq));
}

FinitePoset FinitePoset::product(const FinitePoset& other) const {
  std::vector<std::string> ids;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < other.size(); ++b) ids.push_back(ids_[a] + "x" + other.ids_[b]);
  if (is_structured() && other.is_structured() && !reversed_ && !other.reversed_) {
    std::vector<std::vector<std::int64_t>> keys;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < other.size(); ++b) {
        auto k = keys_[a];
        k.insert(k.end(), other.keys_[b].begin(), other.keys_[b].end());
        keys.push_back(std::move(k));
      }
    auto kinds = kinds_;
    kinds.insert(kinds.end(), other.kinds_.begin(), other.kinds_.end());
    return structured(std::move(ids), std::move(keys), std::move(kinds));
  }
  const std::size_t n = size() * other.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      leq[i][j] = this->leq(i / other.size(), j / other.size()) &&
                  other.leq(i % other.size(), j % other.size());
  return from_closure(std::move(ids), std::move(leq));
}

std::optional<std::size_t> FinitePoset::maximum() const {
  for (std::size_t i = 0; i < size(); ++i) {
    bool top = true;
    for (std::size_t j = 0; j < size() && top; ++j) top = leq(j, i);
    if (top) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> FinitePoset::minimum() const {
  for (std::size_t i = 0; i < size(); ++i) {
    bool bottom = true;
    for (std::size_t j = 0; j < size() && bottom; ++j) bottom = leq(i, j);
    if (bottom) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> FinitePoset::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < size() && minimal; ++j) minimal = !less(j, i);
    if (minimal) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FinitePoset::maximal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < size() && maximal; ++j) maximal = !less(i, j);
    if (maximal) out.push_back(i);
  }
  return out;
}

bool FinitePoset::check_partial_order() const {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq(a, a)) return false;
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq(a, b) && leq(b, a)) return false;
      if (!leq(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (leq(b, c) && !leq(a, c)) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::vector<std::size_t>>> FinitePoset::strict_chains() const {
  const std::size_t n = size();
  std::vector<std::vector<std::size_t>> above(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (less(a, b)) above[a].push_back(b);

  std::vector<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::size_t> chain;
  std::function<void()> extend = [&]() {
    const std::size_t p = chain.size() - 1;
    if (out.size() <= p) out.resize(p + 1);
    out[p].push_back(chain);
    for (std::size_t b : above[chain.back()]) {
      chain.push_back(b);
      extend();
      chain.pop_back();
    }
  };
  for (std::size_t a = 0; a < n; ++a) {
    chain.assign(1, a);
    extend();
  }
  for (auto& level : out) std::sort(level.begin(), level.end());
  return out;
}

std::vector<std::pair<std::string, std::string>> FinitePoset::sorted_relations() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (leq(a, b)) out.emplace_back(ids_[a], ids_[b]);
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const FinitePoset& a, const FinitePoset& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> to_b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto j = b.find(a.ids_[i]);
    if (!j) return false;
    to_b[i] = *j;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.leq(i, j) != b.leq(to_b[i], to_b[j])) return false;
  return true;
}

// ------------------------------------------------------------- constructors

std::string subset_id(std::span<const int> labels) {
  std::vector<int> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < sorted.size(); ++i) out << (i ? "," : "") << sorted[i];
  out << '}';
  return out.str();
}

namespace {

std::string mask_id(std::span<const int> labels, std::uint64_t mask) {
  std::vector<int> members;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (mask & (std::uint64_t{1} << i)) members.push_back(labels[i]);
  return subset_id(members);
}

std::vector<int> checked_labels(std::span<const int> labels) {
  std::vector<int> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("set has repeated elements");
  return sorted;
}

constexpr std::size_t kMaxPowerSet = 20;

}  // namespace

FinitePoset power_set_poset(std::span<const int> labels) {
  if (labels.size() > kMaxPowerSet)
    throw InputError("power set of more than 20 elements is too large");
  const auto sorted = checked_labels(labels);
  const std::uint64_t count = std::uint64_t{1} << sorted.size();
  std::vector<std::string> ids;
  std::vector<std::vector<std::int64_t>> keys;
  ids.reserve(count);
  keys.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    ids.push_back(mask_id(sorted, mask));
    keys.push_back({static_cast<std::int64_t>(mask)});
  }
  return FinitePoset::structured(std::move(ids), std::move(keys),
                                 {FinitePoset::CoordinateKind::subset});
}

FinitePoset punctured_cube(std::span<const int> labels) {
  if (labels.empty()) throw InputError("punctured cube of the empty set");
  if (labels.size() > kMaxPowerSet)
    throw InputError("punctured cube of more than 20 elements is too large");
  const auto sorted = checked_labels(labels);
  const std::uint64_t count = std::uint64_t{1} << sorted.size();
  std::vector<std::string> ids;
  std::vector<std::vector<std::int64_t>> keys;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    ids.push_back(mask_id(sorted, mask));
    keys.push_back({static_cast<std::int64_t>(mask)});
  }
  return FinitePoset::structured(std::move(ids), std::move(keys),
                                 {FinitePoset::CoordinateKind::subset});
}

namespace {

FinitePoset subset_product(const MultiIndex& j, bool include_empty) {
  for (int e : j.entries())
    if (e < 0) throw InputError("product of punctured cubes needs entries >= 0, got " + j.id());
  const std::size_t m = j.size();
  std::vector<std::uint64_t> extent(m);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (j[i] + 1 > static_cast<int>(kMaxPowerSet))
      throw InputError("coordinate too large for a subset product");
    extent[i] = (std::uint64_t{1} << (j[i] + 1)) - (include_empty ? 0 : 1);
    total *= extent[i];
    if (total > (std::uint64_t{1} << kMaxPowerSet))
      throw InputError("subset product has too many elements");
  }
  std::vector<std::string> ids;
  std::vector<std::vector<std::int64_t>> keys;
  std::vector<std::uint64_t> digit(m, 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    std::string id;
    std::vector<std::int64_t> key(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint64_t mask = digit[i] + (include_empty ? 0 : 1);
      std::vector<int> labels(j[i] + 1);
      std::iota(labels.begin(), labels.end(), 0);
      id += (i ? "x" : "") + mask_id(labels, mask);
      key[i] = static_cast<std::int64_t>(mask);
    }
    ids.push_back(std::move(id));
    keys.push_back(std::move(key));
    // Last coordinate varies fastest.
    for (std::size_t i = m; i-- > 0;) {
      if (++digit[i] < extent[i]) break;
      digit[i] = 0;
    }
  }
  return FinitePoset::structured(
      std::move(ids), std::move(keys),
      std::vector<FinitePoset::CoordinateKind>(m, FinitePoset::CoordinateKind::subset));
}

FinitePoset tuple_poset(std::vector<std::vector<int>> tuples, std::size_t m) {
  std::sort(tuples.begin(), tuples.end());
  std::vector<std::string> ids;
  std::vector<std::vector<std::int64_t>> keys;
  for (auto& t : tuples) {
    ids.push_back(MultiIndex(t).id());
    keys.emplace_back(t.begin(), t.end());
  }
  return FinitePoset::structured(
      std::move(ids), std::move(keys),
      std::vector<FinitePoset::CoordinateKind>(m, FinitePoset::CoordinateKind::integer));
}

// Calls visit(t) for every tuple 0 <= t <= bound.
void for_each_in_box(const std::vector<int>& bound,
                     const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> t(bound.size(), 0);
  while (true) {
    visit(t);
    std::size_t i = bound.size();
    while (i-- > 0) {
      if (++t[i] <= bound[i]) break;
      t[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace

FinitePoset punctured_product(const MultiIndex& j) { return subset_product(j, false); }

FinitePoset power_set_product(const MultiIndex& j) { return subset_product(j, true); }

FinitePoset multidegree_downset(const MultiIndex& j, bool strict) {
  if (!j.all_nonnegative()) throw InputError("multidegree downset needs entries >= 0");
  std::vector<std::vector<int>> tuples;
  for_each_in_box(j.entries(), [&](const std::vector<int>& t) {
    if (!strict || t != j.entries()) tuples.push_back(t);
  });
  return tuple_poset(std::move(tuples), j.size());
}

FinitePoset total_degree_downset(int m, int k) {
  if (m < 1 || k < 0) throw InputError("total degree downset needs m >= 1 and k >= 0");
  std::vector<std::vector<int>> tuples;
  for_each_in_box(std::vector<int>(m, k), [&](const std::vector<int>& t) {
    if (std::accumulate(t.begin(), t.end(), 0) <= k) tuples.push_back(t);
  });
  return tuple_poset(std::move(tuples), static_cast<std::size_t>(m));
}

// ------------------------------------------------------------------- ideals

bool is_ideal_indices(const FinitePoset& p, std::span<const std::size_t> members) {
  std::vector<bool> in(p.size(), false);
  for (std::size_t m : members) {
    if (m >= p.size()) throw InputError("subset index out of range");
    in[m] = true;
  }
  for (std::size_t a = 0; a < p.size(); ++a)
    if (in[a])
      for (std::size_t b = 0; b < p.size(); ++b)
        if (!in[b] && p.leq(b, a)) return false;
  return true;
}

bool is_ideal(const FinitePoset& p, std::span<const std::string> members) {
  std::vector<std::size_t> idx;
  for (const auto& id : members) idx.push_back(p.index_of(id));
  return is_ideal_indices(p, idx);
}

std::vector<std::size_t> down_closure(const FinitePoset& p,
                                      std::span<const std::size_t> generators) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t g : generators)
      if (p.leq(a, g)) {
        out.push_back(a);
        break;
      }
  return out;
}

void IdealCover::validate() const {
  if (ideals.empty()) throw InputError("ideal cover has no members");
  if (ideals.size() > 20) throw InputError("ideal cover has too many members");
  std::vector<bool> covered(poset.size(), false);
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    if (!is_ideal_indices(poset, ideals[i]))
      throw InputError("cover member " + std::to_string(i) + " is not an ideal");
    for (std::size_t a : ideals[i]) covered[a] = true;
  }
  for (std::size_t a = 0; a < poset.size(); ++a)
    if (!covered[a]) throw InputError("cover misses element '" + poset.id(a) + "'");
}

std::vector<std::size_t> IdealCover::intersection(std::uint32_t mask) const {
  std::vector<int> hits(poset.size(), 0);
  int needed = 0;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    ++needed;
    for (std::size_t a : ideals[i]) ++hits[a];
  }
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < poset.size(); ++a)
    if (hits[a] == needed) out.push_back(a);
  return out;
}

// ------------------------------------------------------ cover identities

namespace {

// Subsets of the box {0..bound}^m, m <= 3 and bound <= 4.
using BoxSet = std::bitset<128>;

struct Box {
  int m;
  int bound;

  std::size_t encode(const std::vector<int>& t) const {
    std::size_t code = 0;
    for (int v : t) code = code * (bound + 1) + static_cast<std::size_t>(v);
    return code;
  }

  // {k : 0 <= k <= j}; empty if some entry of j is negative.
  BoxSet below(const std::vector<int>& j) const {
    BoxSet s;
    if (std::any_of(j.begin(), j.end(), [](int v) { return v < 0; })) return s;
    for_each_in_box(j, [&](const std::vector<int>& k) { s.set(encode(k)); });
    return s;
  }

  BoxSet strictly_below(const std::vector<int>& j) const {
    BoxSet s = below(j);
    s.reset(encode(j));
    return s;
  }

  BoxSet total_below(int k) const {
    BoxSet s;
    for_each_in_box(std::vector<int>(m, bound), [&](const std::vector<int>& t) {
      if (std::accumulate(t.begin(), t.end(), 0) <= k) s.set(encode(t));
    });
    return s;
  }
};

std::vector<std::vector<int>> tuples_of_total(int m, int k) {
  std::vector<std::vector<int>> out;
  for_each_in_box(std::vector<int>(m, k), [&](const std::vector<int>& t) {
    if (std::accumulate(t.begin(), t.end(), 0) == k) out.push_back(t);
  });
  return out;
}

std::string tuple_text(const std::vector<int>& t) { return MultiIndex(t).id(); }

}  // namespace

std::vector<IdentityCheck> verify_cover_identities(int m, int bound) {
  if (m < 1 || m > 3 || bound < 0 || bound > 4)
    throw InputError("cover identities are checked for 1 <= m <= 3, 0 <= bound <= 4");
  const Box box{m, bound};
  IdentityCheck strict;
  strict.name = "strict downset is the union of the one-step downsets";
  IdentityCheck layer_meets;
  layer_meets.name = "intersections of one-step downsets have final object j_S";
  IdentityCheck total;
  total.name = "total-degree downset is the union of multidegree downsets";
  IdentityCheck total_meets;
  total_meets.name = "intersections of multidegree downsets have final object min S";
  IdentityCheck total_strict;
  total_strict.name = "total degree k-1 downset is the union of strict downsets";

  auto fail = [](IdentityCheck& c, std::string why) {
    if (c.passed) c.counterexample = std::move(why);
    c.passed = false;
  };

  for_each_in_box(std::vector<int>(m, bound), [&](const std::vector<int>& j) {
    const MultiIndex jj(j);
    BoxSet uni;
    for (int i = 0; i < m; ++i) uni |= box.below(jsubr_mask(jj, 1u << i).entries());
    ++strict.cases;
    if (uni != box.strictly_below(j)) fail(strict, "j = " + tuple_text(j));

    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      BoxSet meet;
      meet.set();
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) meet &= box.below(jsubr_mask(jj, 1u << i).entries());
      ++layer_meets.cases;
      if (meet != box.below(jsubr_mask(jj, mask).entries()))
        fail(layer_meets, "j = " + tuple_text(j) + ", S mask = " + std::to_string(mask));
    }
  });

  for (int k = 0; k <= bound; ++k) {
    const auto tops = tuples_of_total(m, k);
    BoxSet uni, uni_strict;
    for (const auto& j : tops) {
      uni |= box.below(j);
      uni_strict |= box.strictly_below(j);
    }
    ++total.cases;
    if (uni != box.total_below(k)) fail(total, "k = " + std::to_string(k));
    ++total_strict.cases;
    if (k >= 1 && uni_strict != box.total_below(k - 1))
      fail(total_strict, "k = " + std::to_string(k));
    if (k == 0 && uni_strict.any()) fail(total_strict, "k = 0");

    const std::size_t count = tops.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << count); ++mask) {
      BoxSet meet;
      meet.set();
      std::vector<int> low(m, k);
      for (std::size_t s = 0; s < count; ++s)
        if (mask & (std::uint64_t{1} << s)) {
          meet &= box.below(tops[s]);
          for (int i = 0; i < m; ++i) low[i] = std::min(low[i], tops[s][i]);
        }
      ++total_meets.cases;
      if (meet != box.below(low))
        fail(total_meets, "k = " + std::to_string(k) + ", S mask = " + std::to_string(mask));
    }
  }
  return {strict, layer_meets, total, total_meets, total_strict};
}

// ------------------------------------------------------------ order complex

ChainComplex order_complex(const FinitePoset& p) {
  const auto chains = p.strict_chains();
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> diffs;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> position(chains.size());
  for (std::size_t d = 0; d < chains.size(); ++d) {
    ranks[static_cast<int>(d)] = chains[d].size();
    for (std::size_t i = 0; i < chains[d].size(); ++i) position[d][chains[d][i]] = i;
  }
  for (std::size_t d = 1; d < chains.size(); ++d) {
    MatrixBuilder b(chains[d - 1].size(), chains[d].size());
    for (std::size_t c = 0; c < chains[d].size(); ++c) {
      const auto& simplex = chains[d][c];
      for (std::size_t i = 0; i < simplex.size(); ++i) {
        auto face = simplex;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        b.add(position[d - 1].at(face), c, (i % 2 == 0) ? 1 : -1);
      }
    }
    diffs[static_cast<int>(d)] = std::move(b).build();
  }
  return ChainComplex(Ring::integers, std::move(ranks), std::move(diffs));
}

}  // namespace cubecalc

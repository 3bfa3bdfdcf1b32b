#include "cubecalc/holim.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cubecalc/errors.hpp"
#include "cubecalc/random_models.hpp"

namespace cubecalc {

namespace {

bool same_complex(const ComplexPtr& a, const ComplexPtr& b) { return a == b || *a == *b; }

// Same order relation on element indices (ids may differ).
bool same_order(const FinitePoset& a, const FinitePoset& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.leq(i, j) != b.leq(i, j)) return false;
  return true;
}

}  // namespace

// ------------------------------------------------------------------ Diagram

Diagram::Diagram(FinitePoset shape, Ring ring, std::vector<ComplexPtr> values,
                 std::map<ArrowKey, ChainMap> arrows)
    : shape_(std::move(shape)), ring_(ring), values_(std::move(values)) {
  const std::size_t n = shape_.size();
  if (values_.size() != n)
    throw InvariantError("diagram has " + std::to_string(values_.size()) + " values for " +
                         std::to_string(n) + " poset elements");
  for (std::size_t q = 0; q < n; ++q) {
    if (!values_[q]) throw InvariantError("diagram value missing at '" + shape_.id(q) + "'");
    if (values_[q]->ring() != ring_ && !values_[q]->is_zero())
      throw InvariantError("diagram value at '" + shape_.id(q) + "' is over " +
                           ring_name(values_[q]->ring()) + ", diagram is over " +
                           ring_name(ring_));
    if (values_[q]->ring() != ring_) values_[q] = share(ChainComplex(ring_));
  }
  for (auto& [key, map] : arrows) {
    const auto [q, q2] = key;
    if (q >= n || q2 >= n || !shape_.leq(q, q2))
      throw InvariantError("arrow given for a pair that is not related in the poset");
    if (!same_complex(map.source_ptr(), values_[q2]) || !same_complex(map.target_ptr(), values_[q]))
      throw InvariantError("arrow '" + shape_.id(q) + "<=" + shape_.id(q2) +
                           "' does not go from value(" + shape_.id(q2) + ") to value(" +
                           shape_.id(q) + ")");
    if (q == q2 && !map.is_identity())
      throw InvariantError("arrow at '" + shape_.id(q) + "<=" + shape_.id(q) +
                           "' is not the identity");
    // Re-anchor endpoints so that downstream pointer comparisons are cheap.
    arrows_.emplace(key, ChainMap(values_[q2], values_[q], map.mats()));
  }
  for (std::size_t q = 0; q < n; ++q) {
    arrows_.try_emplace(ArrowKey{q, q}, ChainMap::identity(values_[q]));
    for (std::size_t q2 = 0; q2 < n; ++q2)
      if (shape_.less(q, q2) && !arrows_.count({q, q2}))
        throw InvariantError("diagram is missing the arrow '" + shape_.id(q) + "<=" +
                             shape_.id(q2) + "'");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!shape_.less(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (!shape_.less(b, c)) continue;
        if (!(arrows_.at({a, c}) == arrows_.at({a, b}).after(arrows_.at({b, c}))))
          throw InvariantError("diagram is not functorial at '" + shape_.id(a) + "<=" +
                               shape_.id(b) + "<=" + shape_.id(c) + "'");
      }
    }
}

Diagram Diagram::from_covariant(const FinitePoset& shape, Ring ring,
                                std::vector<ComplexPtr> values,
                                std::map<ArrowKey, ChainMap> arrows) {
  std::map<ArrowKey, ChainMap> flipped;
  for (auto& [key, map] : arrows) flipped.emplace(ArrowKey{key.second, key.first}, std::move(map));
  return Diagram(shape.opposite(), ring, std::move(values), std::move(flipped));
}

const ChainMap& Diagram::arrow(std::size_t q, std::size_t q2) const {
  auto it = arrows_.find({q, q2});
  if (it == arrows_.end())
    throw InputError("no arrow between unrelated elements '" + shape_.id(q) + "' and '" +
                     shape_.id(q2) + "'");
  return it->second;
}

Diagram Diagram::restrict_to(std::span<const std::size_t> members) const {
  FinitePoset sub = shape_.subposet(members);
  std::vector<ComplexPtr> values;
  for (std::size_t m : members) values.push_back(values_.at(m));
  std::map<ArrowKey, ChainMap> arrows;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j)
      if (i != j && sub.leq(i, j)) arrows.emplace(ArrowKey{i, j}, arrow(members[i], members[j]));
  return Diagram(std::move(sub), ring_, std::move(values), std::move(arrows));
}

// -------------------------------------------------------------- CubeDiagram

Diagram CubeDiagram::build(const std::vector<int>& labels, Ring ring,
                           std::vector<ComplexPtr> vertices,
                           std::map<std::pair<Mask, Mask>, ChainMap> arrows) {
  if (labels.size() > 12) throw InputError("cube dimension above 12 is not supported");
  if (!std::is_sorted(labels.begin(), labels.end()) ||
      std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw InputError("cube labels must be strictly increasing");
  const Mask count = Mask{1} << labels.size();
  if (vertices.size() != count)
    throw InvariantError("cube of dimension " + std::to_string(labels.size()) + " needs " +
                         std::to_string(count) + " vertices");
  std::map<Diagram::ArrowKey, ChainMap> flipped;
  for (auto& [key, map] : arrows) {
    const auto [small, large] = key;
    if (small >= count || large >= count || (small & ~large) != 0)
      throw InvariantError("cube arrow between non-nested vertices");
    flipped.emplace(Diagram::ArrowKey{large, small}, std::move(map));
  }
  return Diagram(power_set_poset(labels).opposite(), ring, std::move(vertices),
                 std::move(flipped));
}

CubeDiagram::CubeDiagram(std::vector<int> labels, Ring ring, std::vector<ComplexPtr> vertices,
                         std::map<std::pair<Mask, Mask>, ChainMap> arrows)
    : labels_(labels), diagram_(build(labels, ring, std::move(vertices), std::move(arrows))) {}

ChainMap CubeDiagram::arrow(Mask small, Mask large) const {
  if ((small & ~large) != 0) throw InputError("cube arrow requested between non-nested vertices");
  return diagram_.arrow(large, small);
}

CubeDiagram CubeDiagram::face(Mask fixed, Mask value) const {
  std::vector<std::size_t> free;
  std::vector<int> labels;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (!(fixed & (Mask{1} << i))) {
      free.push_back(i);
      labels.push_back(labels_[i]);
    }
  auto expand = [&](Mask m) {
    Mask out = value & fixed;
    for (std::size_t k = 0; k < free.size(); ++k)
      if (m & (Mask{1} << k)) out |= Mask{1} << free[k];
    return out;
  };
  const Mask count = Mask{1} << free.size();
  std::vector<ComplexPtr> vertices;
  for (Mask m = 0; m < count; ++m) vertices.push_back(vertex(expand(m)));
  std::map<std::pair<Mask, Mask>, ChainMap> arrows;
  for (Mask s = 0; s < count; ++s)
    for (Mask t = 0; t < count; ++t)
      if (s != t && (s & ~t) == 0) arrows.emplace(std::pair{s, t}, arrow(expand(s), expand(t)));
  return CubeDiagram(std::move(labels), ring(), std::move(vertices), std::move(arrows));
}

CubeDiagram extract_cube(const Diagram& covariant, std::vector<int> labels,
                         std::span<const std::size_t> element_of_mask) {
  using Mask = CubeDiagram::Mask;
  const Mask count = Mask{1} << labels.size();
  if (element_of_mask.size() != count) throw InputError("extract_cube: wrong vertex count");
  std::vector<ComplexPtr> vertices;
  for (Mask m = 0; m < count; ++m) vertices.push_back(covariant.value(element_of_mask[m]));
  std::map<std::pair<Mask, Mask>, ChainMap> arrows;
  for (Mask s = 0; s < count; ++s)
    for (Mask t = 0; t < count; ++t)
      if (s != t && (s & ~t) == 0)
        arrows.emplace(std::pair{s, t},
                       covariant.arrow(element_of_mask[t], element_of_mask[s]));
  return CubeDiagram(std::move(labels), covariant.ring(), std::move(vertices), std::move(arrows));
}

// ------------------------------------------------------------- Totalization

Totalization::Totalization(const Diagram& d) : chains_(d.shape().strict_chains()) {
  chain_index_.resize(chains_.size());
  for (std::size_t p = 0; p < chains_.size(); ++p)
    for (std::size_t c = 0; c < chains_[p].size(); ++c) chain_index_[p][chains_[p][c]] = c;

  struct Block {
    std::size_t level, chain;
    int value_degree;
  };
  std::map<int, std::vector<Block>> blocks;
  std::map<int, std::size_t> ranks;
  for (std::size_t p = 0; p < chains_.size(); ++p)
    for (std::size_t c = 0; c < chains_[p].size(); ++c) {
      const auto& value = *d.value(chains_[p][c].front());
      for (const auto& [s, r] : value.ranks()) {
        const int t = s - static_cast<int>(p);
        blocks[t].push_back({p, c, s});
        offsets_[{p, c, s}] = ranks[t];
        ranks[t] += r;
      }
    }

  const std::size_t n = d.shape().size();
  std::map<int, MatrixBuilder> builders;
  for (const auto& [t, r] : ranks)
    if (ranks.count(t - 1)) builders.emplace(t, MatrixBuilder(ranks[t - 1], r));

  for (const auto& [t, list] : blocks) {
    auto bit = builders.find(t);
    if (bit == builders.end()) continue;
    MatrixBuilder& m = bit->second;
    const Scalar sign_t = (t % 2 == 0) ? 1 : -1;
    for (const auto& blk : list) {
      const auto& sigma = chains_[blk.level][blk.chain];
      const auto& value = *d.value(sigma.front());
      const std::size_t col0 = offsets_.at({blk.level, blk.chain, blk.value_degree});
      // Internal differential.
      if (value.rank(blk.value_degree - 1) > 0)
        m.add_block(offsets_.at({blk.level, blk.chain, blk.value_degree - 1}), col0,
                    value.diff(blk.value_degree));
      // Coface maps into level p + 1.
      const std::size_t p = blk.level;
      if (p + 1 >= chains_.size()) continue;
      for (std::size_t i = 0; i <= p + 1; ++i) {
        for (std::size_t x = 0; x < n; ++x) {
          if (i > 0 && !d.shape().less(sigma[i - 1], x)) continue;
          if (i <= p && !d.shape().less(x, sigma[i])) continue;
          std::vector<std::size_t> tau = sigma;
          tau.insert(tau.begin() + static_cast<std::ptrdiff_t>(i), x);
          const std::size_t tc = chain_index_[p + 1].at(tau);
          auto row = offsets_.find({p + 1, tc, blk.value_degree});
          if (row == offsets_.end()) continue;
          if (i == 0) {
            m.add_block(row->second, col0, d.arrow(x, sigma.front()).at(blk.value_degree),
                        sign_t);
          } else {
            m.add_block(row->second, col0, Matrix::identity(value.rank(blk.value_degree)),
                        sign_t * ((i % 2 == 0) ? 1 : -1));
          }
        }
      }
    }
  }
  std::map<int, Matrix> diffs;
  for (auto& [t, b] : builders) diffs.emplace(t, std::move(b).build());
  complex_ = share(ChainComplex(d.ring(), std::move(ranks), std::move(diffs)));
}

std::size_t Totalization::chain_index(const std::vector<std::size_t>& chain) const {
  if (chain.empty() || chain.size() > chain_index_.size())
    throw InputError("not a strict chain of the diagram shape");
  return chain_index_[chain.size() - 1].at(chain);
}

std::optional<std::size_t> Totalization::offset(std::size_t level, std::size_t chain,
                                                int value_degree) const {
  auto it = offsets_.find({level, chain, value_degree});
  if (it == offsets_.end()) return std::nullopt;
  return it->second;
}

ChainComplex holim(const Diagram& d) { return *Totalization(d).complex(); }

ChainMap holim_map(const Diagram& a, const Totalization& ta, const Diagram& b,
                   const Totalization& tb, const std::vector<ChainMap>& components) {
  if (!same_order(a.shape(), b.shape()) || components.size() != a.size())
    throw InputError("holim_map needs diagrams on the same shape and one component per element");
  for (std::size_t q = 0; q < a.size(); ++q)
    if (!same_complex(components[q].source_ptr(), a.value(q)) ||
        !same_complex(components[q].target_ptr(), b.value(q)))
      throw InvariantError("natural transformation component at '" + a.shape().id(q) +
                           "' has wrong endpoints");
  const auto& src = ta.complex();
  const auto& tgt = tb.complex();
  std::map<int, MatrixBuilder> builders;
  for (const auto& [t, r] : src->ranks()) builders.emplace(t, MatrixBuilder(tgt->rank(t), r));
  const auto& chains = ta.chains();
  for (std::size_t p = 0; p < chains.size(); ++p)
    for (std::size_t c = 0; c < chains[p].size(); ++c) {
      const std::size_t q0 = chains[p][c].front();
      for (const auto& [s, r] : a.value(q0)->ranks()) {
        const int t = s - static_cast<int>(p);
        auto row = tb.offset(p, c, s);
        if (!row) continue;
        builders.at(t).add_block(*row, *ta.offset(p, c, s), components[q0].at(s));
      }
    }
  std::map<int, Matrix> mats;
  for (auto& [t, b2] : builders) mats.emplace(t, std::move(b2).build());
  return ChainMap(src, tgt, std::move(mats));
}

ChainMap holim_restriction(const Diagram& d, const Totalization& full, const Diagram& sub,
                           const Totalization& part,
                           std::span<const std::size_t> sub_to_full) {
  if (sub_to_full.size() != sub.size()) throw InputError("holim_restriction: bad element map");
  const auto& src = full.complex();
  const auto& tgt = part.complex();
  std::map<int, MatrixBuilder> builders;
  for (const auto& [t, r] : src->ranks()) builders.emplace(t, MatrixBuilder(tgt->rank(t), r));
  const auto& chains = part.chains();
  for (std::size_t p = 0; p < chains.size(); ++p)
    for (std::size_t c = 0; c < chains[p].size(); ++c) {
      std::vector<std::size_t> image;
      for (std::size_t e : chains[p][c]) image.push_back(sub_to_full[e]);
      const std::size_t fc = full.chain_index(image);
      const auto& value = *sub.value(chains[p][c].front());
      if (!same_complex(sub.value(chains[p][c].front()), d.value(image.front())))
        throw InvariantError("holim_restriction: subdiagram value mismatch");
      for (const auto& [s, r] : value.ranks()) {
        const int t = s - static_cast<int>(p);
        builders.at(t).add_block(*part.offset(p, c, s), *full.offset(p, fc, s),
                                 Matrix::identity(r));
      }
    }
  std::map<int, Matrix> mats;
  for (auto& [t, b] : builders) mats.emplace(t, std::move(b).build());
  return ChainMap(src, tgt, std::move(mats));
}

ChainMap holim_augmentation(const ComplexPtr& apex, const std::vector<ChainMap>& legs,
                            const Diagram& d, const Totalization& td) {
  if (legs.size() != d.size()) throw InputError("augmentation needs one leg per element");
  for (std::size_t q = 0; q < d.size(); ++q)
    if (!same_complex(legs[q].source_ptr(), apex) ||
        !same_complex(legs[q].target_ptr(), d.value(q)))
      throw InvariantError("augmentation leg at '" + d.shape().id(q) + "' has wrong endpoints");
  const auto& tgt = td.complex();
  std::map<int, Matrix> mats;
  for (const auto& [s, r] : apex->ranks()) {
    MatrixBuilder m(tgt->rank(s), r);
    for (std::size_t q = 0; q < d.size(); ++q) {
      auto row = td.offset(0, td.chain_index({q}), s);
      if (row) m.add_block(*row, 0, legs[q].at(s));
    }
    mats.emplace(s, std::move(m).build());
  }
  try {
    return ChainMap(apex, tgt, std::move(mats));
  } catch (const InvariantError&) {
    throw InvariantError("augmentation legs are not compatible with the diagram arrows");
  }
}

ChainComplex holim_iterated(const Diagram& d, const FinitePoset& first,
                            const FinitePoset& second) {
  const std::size_t na = first.size(), nb = second.size();
  if (d.size() != na * nb || !(d.shape() == first.product(second)))
    throw InputError("holim_iterated: diagram shape is not the given product");
  auto at = [nb](std::size_t a, std::size_t b) { return a * nb + b; };

  std::vector<std::size_t> members(na);
  std::vector<Diagram> slices;
  std::vector<Totalization> totals;
  slices.reserve(nb);
  totals.reserve(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t a = 0; a < na; ++a) members[a] = at(a, b);
    slices.push_back(d.restrict_to(members));
    totals.emplace_back(slices.back());
  }
  std::vector<ComplexPtr> values;
  for (const auto& t : totals) values.push_back(t.complex());
  std::map<Diagram::ArrowKey, ChainMap> arrows;
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t b2 = 0; b2 < nb; ++b2) {
      if (!second.less(b, b2)) continue;
      std::vector<ChainMap> components;
      for (std::size_t a = 0; a < na; ++a) components.push_back(d.arrow(at(a, b), at(a, b2)));
      // Re-anchor on the slice values (same complexes, shared pointers).
      for (std::size_t a = 0; a < na; ++a)
        components[a] = ChainMap(slices[b2].value(a), slices[b].value(a), components[a].mats());
      arrows.emplace(Diagram::ArrowKey{b, b2},
                     holim_map(slices[b2], totals[b2], slices[b], totals[b], components));
    }
  const Diagram outer(second, d.ring(), std::move(values), std::move(arrows));
  return holim(outer);
}

// -------------------------------------------------------------- total fiber

namespace {

// Punctured cube as a contravariant diagram on the opposite of the nonempty
// subsets; element i is the vertex with mask i + 1.
Diagram punctured_diagram(const CubeDiagram& x) {
  using Mask = CubeDiagram::Mask;
  const Mask count = Mask{1} << x.dimension();
  std::vector<ComplexPtr> values;
  for (Mask s = 1; s < count; ++s) values.push_back(x.vertex(s));
  std::map<Diagram::ArrowKey, ChainMap> arrows;
  for (Mask s = 1; s < count; ++s)
    for (Mask t = 1; t < count; ++t)
      if (s != t && (s & ~t) == 0)
        arrows.emplace(Diagram::ArrowKey{t - 1, s - 1}, x.arrow(s, t));
  return Diagram(punctured_cube(x.labels()).opposite(), x.ring(), std::move(values),
                 std::move(arrows));
}

}  // namespace

ChainMap cube_comparison_map(const CubeDiagram& x) {
  if (x.dimension() == 0) throw InputError("comparison map of a 0-cube is undefined");
  using Mask = CubeDiagram::Mask;
  const Diagram punctured = punctured_diagram(x);
  const Totalization total(punctured);
  std::vector<ChainMap> legs;
  for (Mask s = 1; s < (Mask{1} << x.dimension()); ++s) legs.push_back(x.arrow(0, s));
  return holim_augmentation(x.vertex(0), legs, punctured, total);
}

ChainComplex tfiber(const CubeDiagram& x) {
  if (x.dimension() == 0) return *x.vertex(0);
  return hofiber(cube_comparison_map(x));
}

Connectivity cartesian_degree(const CubeDiagram& x) {
  if (x.dimension() == 0) return homology(*x.vertex(0)).lowest_degree();
  return connectivity(cube_comparison_map(x));
}

namespace {

class IteratedFiber {
 public:
  using Mask = CubeDiagram::Mask;

  IteratedFiber(const CubeDiagram& x, std::vector<std::size_t> order)
      : x_(x), order_(std::move(order)) {}

  ChainComplex fiber() { return face_fiber(0, 0); }

 private:
  // Total fiber of the face at `base` spanned by order_[depth..].
  ChainComplex face_fiber(Mask base, std::size_t depth) {
    if (depth == order_.size()) return *x_.vertex(base);
    return hofiber(face_map(base, depth + 1, order_[depth]));
  }

  // Map tfib(face(base, depth)) -> tfib(face(base + extra, depth)).
  const ChainMap& face_map(Mask base, std::size_t depth, std::size_t extra) {
    const auto key = std::make_tuple(base, depth, extra);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Mask e = Mask{1} << extra;
    if (depth == order_.size()) return memo_.emplace(key, x_.arrow(base, base | e)).first->second;
    const std::size_t c = order_[depth];
    const Mask cb = Mask{1} << c;
    ChainMap top = face_map(base, depth + 1, c);
    ChainMap bottom = face_map(base | e, depth + 1, c);
    ChainMap left = face_map(base, depth + 1, extra);
    ChainMap right = face_map(base | cb, depth + 1, extra);
    return memo_.emplace(key, hofiber_map(top, bottom, left, right)).first->second;
  }

  const CubeDiagram& x_;
  std::vector<std::size_t> order_;
  std::map<std::tuple<Mask, std::size_t, std::size_t>, ChainMap> memo_;
};

}  // namespace

ChainComplex tfiber_iterated(const CubeDiagram& x, std::size_t coord) {
  if (x.dimension() == 0) return *x.vertex(0);
  if (coord >= x.dimension())
    throw InputError("iteration coordinate " + std::to_string(coord) +
                     " is not a cube direction");
  std::vector<std::size_t> order{coord};
  for (std::size_t i = 0; i < x.dimension(); ++i)
    if (i != coord) order.push_back(i);
  return IteratedFiber(x, std::move(order)).fiber();
}

// ------------------------------------------------------- ideal decomposition

HomologyComparison verify_ideal_decomposition(const Diagram& d, const IdealCover& cover) {
  if (!(cover.poset == d.shape())) throw InputError("ideal cover is for a different poset");
  cover.validate();
  HomologyComparison out;
  out.description = "holim over the poset vs holim over the cover's punctured cube";
  out.lhs = homology(holim(d));

  using Mask = std::uint32_t;
  const std::size_t k = cover.ideals.size();
  const Mask count = Mask{1} << k;
  std::vector<std::vector<std::size_t>> members(count);
  std::vector<Diagram> parts;
  std::vector<Totalization> totals;
  parts.reserve(count);
  totals.reserve(count);
  for (Mask s = 1; s < count; ++s) {
    members[s] = cover.intersection(s);
    parts.push_back(d.restrict_to(members[s]));
    totals.emplace_back(parts.back());
  }
  std::vector<ComplexPtr> values;
  for (const auto& t : totals) values.push_back(t.complex());
  std::map<Diagram::ArrowKey, ChainMap> arrows;
  for (Mask s = 1; s < count; ++s)
    for (Mask t = 1; t < count; ++t) {
      if (s == t || (s & ~t) != 0) continue;
      // Q_t is contained in Q_s; locate its elements inside Q_s.
      std::vector<std::size_t> into;
      for (std::size_t e : members[t]) {
        auto pos = std::lower_bound(members[s].begin(), members[s].end(), e);
        into.push_back(static_cast<std::size_t>(pos - members[s].begin()));
      }
      arrows.emplace(Diagram::ArrowKey{s - 1, t - 1},
                     holim_restriction(parts[s - 1], totals[s - 1], parts[t - 1], totals[t - 1],
                                       into));
    }
  std::vector<int> labels(k);
  std::iota(labels.begin(), labels.end(), 0);
  const Diagram outer =
      Diagram::from_covariant(punctured_cube(labels), d.ring(), std::move(values), std::move(arrows));
  out.rhs = homology(holim(outer));
  return out;
}

// ------------------------------------------------------------ juxtaposition

bool JuxtapositionTrial::holds() const {
  if (!glued) return true;
  auto lower = [](const Connectivity& a, const Connectivity& b) -> Connectivity {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  };
  const Connectivity floor = lower(first, second);
  return floor && *glued >= *floor;
}

bool JuxtapositionReport::all_hold() const {
  return std::all_of(trials.begin(), trials.end(), [](const auto& t) { return t.holds(); });
}

JuxtapositionReport verify_juxtaposition(int trials, std::uint64_t seed,
                                         std::size_t base_dimension) {
  using Mask = CubeDiagram::Mask;
  if (trials < 0) throw InputError("trial count must be nonnegative");
  std::vector<int> base_labels(base_dimension);
  std::iota(base_labels.begin(), base_labels.end(), 0);
  const FinitePoset levels = FinitePoset::structured(
      {"0", "1", "2"}, {{0}, {1}, {2}}, {FinitePoset::CoordinateKind::integer});
  const FinitePoset shape = power_set_poset(base_labels).product(levels);

  std::vector<int> cube_labels(base_dimension + 1);
  std::iota(cube_labels.begin(), cube_labels.end(), 0);
  const Mask glue = Mask{1} << base_dimension;
  auto cube_at = [&](const Diagram& d, std::size_t low, std::size_t high) {
    std::vector<std::size_t> element(std::size_t{1} << (base_dimension + 1));
    for (Mask m = 0; m < element.size(); ++m)
      element[m] = (m & ~glue) * 3 + ((m & glue) ? high : low);
    return extract_cube(d, cube_labels, element);
  };

  JuxtapositionReport report;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed, static_cast<std::uint64_t>(trial));
    const Diagram d = random_diagram(rng, shape.opposite(), RandomDiagramOptions{});
    JuxtapositionTrial t;
    t.first = cartesian_degree(cube_at(d, 0, 1));
    t.second = cartesian_degree(cube_at(d, 1, 2));
    t.glued = cartesian_degree(cube_at(d, 0, 2));
    report.trials.push_back(t);
  }
  return report;
}

}  // namespace cubecalc

#include "cubecalc/tower.hpp"

#include <algorithm>
#include <numeric>

#include "cubecalc/errors.hpp"
#include "cubecalc/linkmodel.hpp"

namespace cubecalc {

namespace {

bool contained(const SubsetTuple& small, const SubsetTuple& large) {
  if (small.size() != large.size()) return false;
  for (std::size_t i = 0; i < small.size(); ++i)
    if ((small[i] & ~large[i]) != 0) return false;
  return true;
}

bool has_negative(const MultiIndex& j) {
  return std::any_of(j.entries().begin(), j.entries().end(), [](int e) { return e < 0; });
}

}  // namespace

// --------------------------------------------------------------- suppliers

ChainMap ConstantSupplier::arrow(const SubsetTuple&, const SubsetTuple&) const {
  return ChainMap::identity(value_);
}

LinkProjectionSupplier::LinkProjectionSupplier(const MultiIndex& j, int n) : j_(j), n_(n) {
  if (!j.all_nonnegative()) throw InputError("link supplier needs entries >= 0");
  PointSpec{std::vector<int>(j.size(), 1), n}.validate();
}

std::vector<std::size_t> LinkProjectionSupplier::keep(const SubsetTuple& s) const {
  if (s.size() != j_.size()) throw InputError("subset tuple has the wrong length");
  std::vector<std::size_t> out;
  std::size_t base = 0;
  for (std::size_t c = 0; c < j_.size(); ++c) {
    const std::size_t slots = static_cast<std::size_t>(j_[c]) + 1;
    for (std::size_t i = 0; i < slots; ++i)
      if (!(s[c] & (1u << i))) out.push_back(base + i);
    base += slots;
  }
  return out;
}

ComplexPtr LinkProjectionSupplier::value(const SubsetTuple& s) const {
  std::vector<int> t;
  for (int e : j_.entries()) t.push_back(e + 1);
  return link_model(PointSpec{t, n_}, keep(s)).complex;
}

ChainMap LinkProjectionSupplier::arrow(const SubsetTuple& small, const SubsetTuple& large) const {
  if (!contained(small, large)) throw InputError("supplier arrow between non-nested tuples");
  std::vector<int> t;
  for (int e : j_.entries()) t.push_back(e + 1);
  const PointSpec spec{t, n_};
  return restriction(link_model(spec, keep(small)), link_model(spec, keep(large)));
}

DiagramSupplier::DiagramSupplier(const MultiIndex& j, Diagram d) : j_(j), d_(std::move(d)) {
  if (!(d_.shape() == power_set_product(j).opposite()))
    throw InputError("supplier diagram is not on the subset product of " + j.id());
}

std::size_t DiagramSupplier::index(const SubsetTuple& s) const {
  if (s.size() != j_.size()) throw InputError("subset tuple has the wrong length");
  std::string id;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<int> labels;
    for (int b = 0; b <= j_[i]; ++b)
      if (s[i] & (1u << b)) labels.push_back(b);
    id += (i ? "x" : "") + subset_id(labels);
  }
  return d_.shape().index_of(id);
}

ComplexPtr DiagramSupplier::value(const SubsetTuple& s) const { return d_.value(index(s)); }

ChainMap DiagramSupplier::arrow(const SubsetTuple& small, const SubsetTuple& large) const {
  return d_.arrow(index(large), index(small));
}

RandomPolynomialSupplier::RandomPolynomialSupplier(Rng& rng, const MultiIndex& j, Ring ring,
                                                   bool exceed)
    : j_(j), ring_(ring) {
  if (!j.all_nonnegative()) throw InputError("polynomial supplier needs entries >= 0");
  const std::size_t count = 1 + rng.index(3);
  const std::size_t broken = exceed ? rng.index(count) : count;
  for (std::size_t p = 0; p < count; ++p) {
    Piece piece;
    const std::size_t full_coord = rng.index(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::uint32_t all = (1u << (j[i] + 1)) - 1;
      std::uint32_t k = 0;
      if (p == broken && i == full_coord) {
        k = all;
      } else {
        // At most j_i of the j_i + 1 slots.
        for (int b = 0; b <= j[i]; ++b)
          if (rng.chance(40)) k |= 1u << b;
        if (k == all) k &= ~(1u << rng.index(static_cast<std::size_t>(j[i]) + 1));
      }
      piece.avoid.push_back(k);
    }
    RandomComplexOptions opts{0, 3, 2};
    ChainComplex c;
    do {
      c = random_complex(rng, ring, opts);
    } while (c.is_zero() || homology(c).is_zero());
    piece.complex = share(std::move(c));
    pieces_.push_back(std::move(piece));
  }
}

bool RandomPolynomialSupplier::present(const Piece& p, const SubsetTuple& s) const {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] & p.avoid[i]) return false;
  return true;
}

ComplexPtr RandomPolynomialSupplier::value(const SubsetTuple& s) const {
  ChainComplex sum(ring_);
  for (const auto& p : pieces_)
    if (present(p, s)) sum = direct_sum(sum, *p.complex);
  return share(std::move(sum));
}

ChainMap RandomPolynomialSupplier::arrow(const SubsetTuple& small,
                                         const SubsetTuple& large) const {
  if (!contained(small, large)) throw InputError("supplier arrow between non-nested tuples");
  ComplexPtr src = value(small), tgt = value(large);
  std::map<int, MatrixBuilder> mats;
  for (const auto& [deg, r] : src->ranks()) mats.emplace(deg, MatrixBuilder(tgt->rank(deg), r));
  std::map<int, std::size_t> row, col;
  for (const auto& p : pieces_) {
    if (!present(p, small)) continue;
    const bool kept = present(p, large);
    for (const auto& [deg, r] : p.complex->ranks()) {
      if (kept) {
        mats.at(deg).add_block(row[deg], col[deg], Matrix::identity(r));
        row[deg] += r;
      }
      col[deg] += r;
    }
  }
  std::map<int, Matrix> built;
  for (auto& [deg, b] : mats) built.emplace(deg, std::move(b).build());
  return ChainMap(src, tgt, std::move(built));
}

// ------------------------------------------------------------------ stages

SubsetTuple subset_tuple(const FinitePoset& product_shape, std::size_t index) {
  SubsetTuple out;
  for (std::int64_t k : product_shape.key(index)) out.push_back(static_cast<std::uint32_t>(k));
  return out;
}

namespace {

Diagram covariant_on(const FinitePoset& shape, const StageSupplier& supplier) {
  const std::size_t n = shape.size();
  std::vector<SubsetTuple> tuples(n);
  std::vector<ComplexPtr> values(n);
  for (std::size_t q = 0; q < n; ++q) {
    tuples[q] = subset_tuple(shape, q);
    values[q] = supplier.value(tuples[q]);
  }
  std::map<Diagram::ArrowKey, ChainMap> arrows;
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t q2 = 0; q2 < n; ++q2)
      if (shape.less(q, q2)) {
        ChainMap f = supplier.arrow(tuples[q], tuples[q2]);
        arrows.emplace(Diagram::ArrowKey{q, q2}, ChainMap(values[q], values[q2], f.mats()));
      }
  return Diagram::from_covariant(shape, supplier.ring(), std::move(values), std::move(arrows));
}

}  // namespace

StageModel stage_model(const MultiIndex& j, const StageSupplier& supplier) {
  if (has_negative(j)) return StageModel{j, std::nullopt, share(ChainComplex(supplier.ring()))};
  return stage_model(j, covariant_on(punctured_product(j), supplier));
}

StageModel stage_model(const MultiIndex& j, Diagram covariant) {
  if (has_negative(j)) return StageModel{j, std::nullopt, share(ChainComplex(covariant.ring()))};
  if (!(covariant.shape() == punctured_product(j).opposite()))
    throw InputError("stage diagram is not on the punctured product of " + j.id());
  ComplexPtr stage = share(holim(covariant));
  return StageModel{j, std::move(covariant), std::move(stage)};
}

ChainMap stage_comparison_map(const MultiIndex& j, const StageSupplier& supplier) {
  if (!j.all_nonnegative()) throw InputError("comparison map needs entries >= 0");
  const FinitePoset shape = punctured_product(j);
  const Diagram d = covariant_on(shape, supplier);
  const Totalization total(d);
  const SubsetTuple empty(j.size(), 0);
  ComplexPtr apex = supplier.value(empty);
  std::vector<ChainMap> legs;
  for (std::size_t q = 0; q < shape.size(); ++q) {
    ChainMap leg = supplier.arrow(empty, subset_tuple(shape, q));
    legs.push_back(ChainMap(apex, d.value(q), leg.mats()));
  }
  return holim_augmentation(apex, legs, d, total);
}

Diagram stage_diagram(const MultiIndex& j, const StageSupplier& supplier) {
  if (!j.all_nonnegative()) throw InputError("stage diagram needs entries >= 0");
  const FinitePoset full_shape = punctured_product(j);
  const Diagram full = covariant_on(full_shape, supplier);
  const FinitePoset grid = multidegree_downset(j, false);

  std::vector<std::vector<std::size_t>> members(grid.size());
  std::vector<Diagram> parts;
  std::vector<Totalization> totals;
  parts.reserve(grid.size());
  totals.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& k = grid.key(g);
    for (std::size_t q = 0; q < full_shape.size(); ++q) {
      const SubsetTuple s = subset_tuple(full_shape, q);
      bool inside = true;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] >> (k[i] + 1)) inside = false;
      if (inside) members[g].push_back(q);
    }
    parts.push_back(full.restrict_to(members[g]));
    totals.emplace_back(parts.back());
  }
  std::vector<ComplexPtr> values;
  for (const auto& t : totals) values.push_back(t.complex());
  std::map<Diagram::ArrowKey, ChainMap> arrows;
  for (std::size_t a = 0; a < grid.size(); ++a)
    for (std::size_t b = 0; b < grid.size(); ++b) {
      if (!grid.less(a, b)) continue;
      // members[a] is contained in members[b]; holim over b restricts to a.
      std::vector<std::size_t> into;
      for (std::size_t e : members[a]) {
        auto pos = std::lower_bound(members[b].begin(), members[b].end(), e);
        into.push_back(static_cast<std::size_t>(pos - members[b].begin()));
      }
      arrows.emplace(Diagram::ArrowKey{a, b},
                     holim_restriction(parts[b], totals[b], parts[a], totals[a], into));
    }
  return Diagram(grid, supplier.ring(), std::move(values), std::move(arrows));
}

// ------------------------------------------------------------------ layers

LayerModel layer_model(const MultiIndex& j, const Diagram& stages) {
  if (!j.all_nonnegative()) throw InputError("layer needs entries >= 0");
  if (!(stages.shape() == multidegree_downset(j, false)))
    throw InputError("stage diagram is not on the multidegree downset of " + j.id());
  const std::size_t m = j.size();
  if (m > 12) throw InputError("layer cubes are limited to 12 variables");
  using Mask = CubeDiagram::Mask;
  const Mask count = Mask{1} << m;
  std::vector<std::optional<std::size_t>> element(count);
  std::vector<ComplexPtr> vertices(count);
  const ComplexPtr zero = share(ChainComplex(stages.ring()));
  for (Mask r = 0; r < count; ++r) {
    std::vector<int> t = j.entries();
    bool negative = false;
    for (std::size_t i = 0; i < m; ++i)
      if (r & (Mask{1} << i)) negative |= --t[i] < 0;
    if (negative) {
      vertices[r] = zero;
      continue;
    }
    element[r] = stages.shape().index_of(MultiIndex(t).id());
    vertices[r] = stages.value(*element[r]);
  }
  std::map<std::pair<Mask, Mask>, ChainMap> arrows;
  for (Mask s = 0; s < count; ++s)
    for (Mask t = 0; t < count; ++t) {
      if (s == t || (s & ~t) != 0) continue;
      if (element[s] && element[t])
        arrows.emplace(std::pair{s, t}, stages.arrow(*element[t], *element[s]));
      else
        arrows.emplace(std::pair{s, t}, ChainMap::zero(vertices[s], vertices[t]));
    }
  std::vector<int> labels(m);
  std::iota(labels.begin(), labels.end(), 1);
  CubeDiagram cube(std::move(labels), stages.ring(), std::move(vertices), std::move(arrows));
  ChainComplex layer = tfiber(cube);
  return LayerModel{j, std::move(cube), std::move(layer)};
}

HomologyComparison verify_layer_poset_equivalence(const MultiIndex& j, const Diagram& stages) {
  HomologyComparison out;
  out.description = "hofiber over the strict downset vs total fiber of the layer cube";
  const LayerModel layer = layer_model(j, stages);
  out.rhs = homology(layer.layer);

  const std::size_t top = stages.shape().index_of(j.id());
  std::vector<std::size_t> members;
  for (std::size_t q = 0; q < stages.size(); ++q)
    if (q != top) members.push_back(q);
  const ComplexPtr apex = stages.value(top);
  if (members.empty()) {
    out.lhs = homology(*apex);
    return out;
  }
  const Diagram below = stages.restrict_to(members);
  const Totalization total(below);
  std::vector<ChainMap> legs;
  for (std::size_t i = 0; i < members.size(); ++i)
    legs.push_back(stages.arrow(members[i], top));
  out.lhs = homology(hofiber(holim_augmentation(apex, legs, below, total)));
  return out;
}

// ------------------------------------------------------------ connectivity

long long gk_connectivity(long long k, long long handle, long long n) {
  if (k < 1) throw InputError("stage index k must be at least 1");
  return k * (n - handle - 2) + 1 - handle;
}

bool gk_converges(long long handle, long long n) { return n - handle - 2 > 0; }

bool MultiBounds::converges() const {
  return std::none_of(stagnant.begin(), stagnant.end(), [](bool b) { return b; });
}

MultiBounds multi_convergence_bounds(const MultiIndex& j, const std::vector<long long>& p,
                                     long long n) {
  if (p.size() != j.size()) throw InputError("j and p must have the same length");
  const std::size_t m = j.size();
  MultiBounds out;
  for (std::size_t i = 0; i < m; ++i) {
    const long long slope = n - p[i] - 2;
    const long long other = m == 1 ? p[i] : p[(i + 1) % m];
    out.first.push_back(j[i] * slope + 1 - p[i]);
    out.second.push_back((j[i] + 1) * slope + 1 - other);
    out.stagnant.push_back(slope <= 0);
  }
  return out;
}

}  // namespace cubecalc

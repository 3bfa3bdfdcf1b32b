#include "cubecalc/random_models.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "cubecalc/errors.hpp"

namespace cubecalc {

// ---------------------------------------------------------------------- Rng

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw InputError("Rng::index of an empty range");
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

int Rng::uniform(int lo, int hi) {
  if (hi < lo) throw InputError("Rng::uniform with empty range");
  return lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo) + 1));
}

bool Rng::chance(int percent) { return uniform(0, 99) < percent; }

// ------------------------------------------------------------ split complexes

SplitComplex split_complex(Ring ring, std::map<int, std::size_t> homology,
                           std::map<int, std::size_t> pairs_down_from) {
  SplitComplex out;
  std::set<int> degrees;
  for (const auto& [n, h] : homology)
    if (h) degrees.insert(n);
  for (const auto& [n, p] : pairs_down_from)
    if (p) {
      degrees.insert(n);
      degrees.insert(n - 1);
    }
  std::map<int, std::size_t> ranks;
  for (int n : degrees) {
    out.homology[n] = homology.count(n) ? homology[n] : 0;
    out.tops[n] = pairs_down_from.count(n) ? pairs_down_from[n] : 0;
    out.bottoms[n] = pairs_down_from.count(n + 1) ? pairs_down_from[n + 1] : 0;
    ranks[n] = out.homology[n] + out.tops[n] + out.bottoms[n];
  }
  std::map<int, Matrix> diffs;
  for (int n : degrees) {
    const std::size_t p = out.tops[n];
    if (!p) continue;
    MatrixBuilder d(ranks[n - 1], ranks[n]);
    const std::size_t row0 = out.homology[n - 1] + out.tops[n - 1];
    const std::size_t col0 = out.homology[n];
    for (std::size_t k = 0; k < p; ++k) d.add(row0 + k, col0 + k, 1);
    diffs[n] = std::move(d).build();
  }
  out.complex = ChainComplex(ring, std::move(ranks), std::move(diffs));
  return out;
}

SplitComplex random_split_complex(Rng& rng, Ring ring, const RandomComplexOptions& opts) {
  std::map<int, std::size_t> h, pairs;
  for (int n = opts.min_degree; n <= opts.max_degree; ++n) {
    h[n] = static_cast<std::size_t>(rng.uniform(0, 2));
    pairs[n] = n > opts.min_degree ? static_cast<std::size_t>(rng.uniform(0, 1)) : 0;
  }
  for (int n = opts.min_degree; n <= opts.max_degree; ++n) {
    auto rank = [&] { return h[n] + pairs[n] + (pairs.count(n + 1) ? pairs[n + 1] : 0); };
    while (rank() > opts.max_rank) {
      if (h[n] > 0)
        --h[n];
      else if (pairs[n] > 0)
        --pairs[n];
      else
        --pairs[n + 1];
    }
  }
  return split_complex(ring, std::move(h), std::move(pairs));
}

ChainMap random_split_map(Rng& rng, const SplitComplex& src, const ComplexPtr& src_ptr,
                          const SplitComplex& tgt, const ComplexPtr& tgt_ptr) {
  auto count = [](const std::map<int, std::size_t>& m, int n) {
    auto it = m.find(n);
    return it == m.end() ? std::size_t{0} : it->second;
  };
  auto coeff = [&rng] { return Scalar(rng.uniform(-2, 2)); };

  // Images of homology classes and of tops, as dense columns.
  std::map<int, std::vector<std::vector<Scalar>>> image;  // degree -> columns
  for (const auto& [n, r] : src.complex.ranks()) {
    const std::size_t tr = tgt.complex.rank(n);
    auto& cols = image[n];
    cols.assign(r, std::vector<Scalar>(tr));
    const std::size_t th = count(tgt.homology, n), tt = count(tgt.tops, n);
    const std::size_t sh = count(src.homology, n), st = count(src.tops, n);
    for (std::size_t j = 0; j < sh; ++j) {
      // Cycles of the target: its homology and bottom vectors.
      for (std::size_t i = 0; i < th; ++i) cols[j][i] = coeff();
      for (std::size_t i = th + tt; i < tr; ++i) cols[j][i] = coeff();
    }
    for (std::size_t j = sh; j < sh + st; ++j)
      for (std::size_t i = 0; i < tr; ++i)
        if (rng.chance(50)) cols[j][i] = coeff();
  }
  // Bottoms follow the tops one degree up: f(d b) = d f(b).
  for (const auto& [n, r] : src.complex.ranks()) {
    const std::size_t sh = count(src.homology, n), st = count(src.tops, n);
    const std::size_t sb = count(src.bottoms, n);
    if (!sb) continue;
    const Matrix d = tgt.complex.diff(n + 1);
    const std::size_t above_h = count(src.homology, n + 1);
    for (std::size_t k = 0; k < sb; ++k)
      image[n][sh + st + k] = d.apply(image[n + 1][above_h + k]);
  }
  std::map<int, Matrix> mats;
  for (auto& [n, cols] : image) {
    const std::size_t tr = tgt.complex.rank(n);
    MatrixBuilder m(tr, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < tr; ++i) m.add(i, j, cols[j][i]);
    mats[n] = std::move(m).build();
  }
  return ChainMap(src_ptr, tgt_ptr, std::move(mats));
}

// ------------------------------------------------------------- basis change

std::pair<Matrix, Matrix> random_unimodular(Rng& rng, std::size_t n) {
  std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n)), ginv = g;
  for (std::size_t i = 0; i < n; ++i) g[i][i] = ginv[i][i] = 1;
  if (n == 0) return {Matrix(0, 0), Matrix(0, 0)};
  for (std::size_t step = 0; step < 2 * n + 1; ++step) {
    if (n == 1 || rng.chance(15)) {
      // Negate row i of g; the inverse negates column i.
      const std::size_t i = rng.index(n);
      for (std::size_t k = 0; k < n; ++k) {
        g[i][k] = -g[i][k];
        ginv[k][i] = -ginv[k][i];
      }
      continue;
    }
    const std::size_t i = rng.index(n);
    std::size_t j = rng.index(n - 1);
    if (j >= i) ++j;
    static constexpr int kChoices[] = {-2, -1, 1, 2};
    const Scalar c = kChoices[rng.index(4)];
    // g <- E g with E = I + c e_ij ; ginv <- ginv E^{-1}, E^{-1} = I - c e_ij.
    for (std::size_t k = 0; k < n; ++k) g[i][k] += c * g[j][k];
    for (std::size_t k = 0; k < n; ++k) ginv[k][j] -= c * ginv[k][i];
  }
  return {Matrix::from_dense(g, n), Matrix::from_dense(ginv, n)};
}

BasisChange random_basis_change(Rng& rng, const ComplexPtr& c) {
  std::map<int, Matrix> fwd, bwd;
  for (const auto& [n, r] : c->ranks()) {
    auto [g, ginv] = random_unimodular(rng, r);
    fwd[n] = std::move(g);
    bwd[n] = std::move(ginv);
  }
  std::map<int, Matrix> diffs;
  for (const auto& [n, d] : c->diffs()) diffs[n] = fwd.at(n - 1) * d * bwd.at(n);
  auto changed = share(ChainComplex(c->ring(), c->ranks(), std::move(diffs), c->labels()));
  return {changed, ChainMap(c, changed, fwd), ChainMap(changed, c, bwd)};
}

ChainComplex random_complex(Rng& rng, Ring ring, const RandomComplexOptions& opts) {
  SplitComplex split = random_split_complex(rng, ring, opts);
  ChainComplex base = split.complex;
  if (ring == Ring::integers) {
    // Scale some of the pairing maps to introduce torsion.
    std::map<int, Matrix> diffs;
    for (const auto& [n, d] : base.diffs()) {
      MatrixBuilder m(d.rows(), d.cols());
      for (std::size_t i = 0; i < d.rows(); ++i)
        for (const auto& e : d.row(i)) m.add(i, e.col, e.value * rng.uniform(1, 3));
      diffs[n] = std::move(m).build();
    }
    base = ChainComplex(ring, base.ranks(), std::move(diffs));
  }
  return *random_basis_change(rng, share(std::move(base))).complex;
}

ChainMap random_chain_map(Rng& rng, Ring ring, const RandomComplexOptions& opts) {
  SplitComplex a = random_split_complex(rng, ring, opts);
  SplitComplex b = random_split_complex(rng, ring, opts);
  auto pa = share(a.complex);
  auto pb = share(b.complex);
  ChainMap f = random_split_map(rng, a, pa, b, pb);
  BasisChange ca = random_basis_change(rng, pa);
  BasisChange cb = random_basis_change(rng, pb);
  return cb.forward.after(f.after(ca.backward));
}

// ----------------------------------------------------------------- diagrams

namespace {

struct Piece {
  std::vector<int> role;  // 0 absent, 1 upper complex, 2 lower complex
  SplitComplex upper, lower;
  ComplexPtr upper_ptr, lower_ptr;
  std::optional<ChainMap> link;  // upper -> lower
};

std::vector<int> up_set(const FinitePoset& p, std::size_t g) {
  std::vector<int> in(p.size(), 0);
  for (std::size_t q = 0; q < p.size(); ++q) in[q] = p.leq(g, q);
  return in;
}

std::vector<int> down_set(const FinitePoset& p, std::size_t g) {
  std::vector<int> in(p.size(), 0);
  for (std::size_t q = 0; q < p.size(); ++q) in[q] = p.leq(q, g);
  return in;
}

std::vector<int> random_convex(Rng& rng, const FinitePoset& p) {
  const std::size_t n = p.size();
  switch (rng.uniform(0, 3)) {
    case 0:
      return std::vector<int>(n, 1);
    case 1:
      return down_set(p, rng.index(n));
    case 2:
      return up_set(p, rng.index(n));
    default: {
      const std::size_t g = rng.index(n);
      std::vector<std::size_t> above;
      for (std::size_t q = 0; q < n; ++q)
        if (p.leq(g, q)) above.push_back(q);
      const std::size_t h = above[rng.index(above.size())];
      auto up = up_set(p, g);
      auto down = down_set(p, h);
      for (std::size_t q = 0; q < n; ++q) up[q] = up[q] && down[q];
      return up;
    }
  }
}

}  // namespace

Diagram random_diagram(Rng& rng, const FinitePoset& shape, const RandomDiagramOptions& opts) {
  const std::size_t n = shape.size();
  if (n == 0) return Diagram(shape, opts.ring, {}, {});
  const std::size_t want = 1 + rng.index(std::max<std::size_t>(opts.max_pieces, 1));
  RandomComplexOptions small = opts.complexes;
  small.max_rank = std::min<std::size_t>(small.max_rank, 2);

  std::vector<Piece> pieces;
  std::vector<std::map<int, std::size_t>> load(n);
  for (std::size_t attempt = 0; pieces.size() < want && attempt < 8 * want; ++attempt) {
    Piece piece;
    piece.upper = random_split_complex(rng, opts.ring, small);
    if (piece.upper.complex.is_zero()) continue;
    piece.upper_ptr = share(piece.upper.complex);
    const auto convex = random_convex(rng, shape);
    piece.role.assign(n, 0);
    if (rng.chance(50)) {
      piece.lower = random_split_complex(rng, opts.ring, small);
      piece.lower_ptr = share(piece.lower.complex);
      std::vector<std::size_t> inside;
      for (std::size_t q = 0; q < n; ++q)
        if (convex[q]) inside.push_back(q);
      const std::size_t g = inside[rng.index(inside.size())];
      for (std::size_t q = 0; q < n; ++q)
        if (convex[q]) piece.role[q] = shape.leq(g, q) ? 1 : 2;
      piece.link = random_split_map(rng, piece.upper, piece.upper_ptr, piece.lower,
                                    piece.lower_ptr);
    } else {
      for (std::size_t q = 0; q < n; ++q) piece.role[q] = convex[q];
    }
    bool fits = true;
    for (std::size_t q = 0; q < n && fits; ++q) {
      if (!piece.role[q]) continue;
      const auto& c = piece.role[q] == 1 ? piece.upper.complex : piece.lower.complex;
      for (const auto& [deg, r] : c.ranks())
        if ((load[q].count(deg) ? load[q][deg] : 0) + r > opts.complexes.max_rank) fits = false;
    }
    if (!fits) continue;
    for (std::size_t q = 0; q < n; ++q) {
      if (!piece.role[q]) continue;
      const auto& c = piece.role[q] == 1 ? piece.upper.complex : piece.lower.complex;
      for (const auto& [deg, r] : c.ranks()) load[q][deg] += r;
    }
    pieces.push_back(std::move(piece));
  }

  // Vertex values: direct sums of the pieces present; remember offsets.
  std::vector<ComplexPtr> values(n);
  std::vector<std::vector<std::map<int, std::size_t>>> offset(n);
  for (std::size_t q = 0; q < n; ++q) {
    ChainComplex sum(opts.ring);
    for (const auto& piece : pieces) {
      std::map<int, std::size_t> at;
      for (const auto& [deg, r] : sum.ranks()) at[deg] = r;
      offset[q].push_back(at);
      if (piece.role[q] == 1) sum = direct_sum(sum, piece.upper.complex);
      if (piece.role[q] == 2) sum = direct_sum(sum, piece.lower.complex);
    }
    values[q] = share(std::move(sum));
  }
  auto start = [&](std::size_t q, std::size_t k, int deg) {
    auto it = offset[q][k].find(deg);
    return it == offset[q][k].end() ? std::size_t{0} : it->second;
  };

  std::map<Diagram::ArrowKey, ChainMap> arrows;
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t q2 = 0; q2 < n; ++q2) {
      if (!shape.less(q, q2)) continue;
      // value(q2) -> value(q)
      std::map<int, MatrixBuilder> mats;
      for (const auto& [deg, r] : values[q2]->ranks())
        mats.emplace(deg, MatrixBuilder(values[q]->rank(deg), r));
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& piece = pieces[k];
        const int from = piece.role[q2], to = piece.role[q];
        if (!from || !to) continue;
        const ComplexPtr& src = from == 1 ? piece.upper_ptr : piece.lower_ptr;
        for (const auto& [deg, r] : src->ranks()) {
          Matrix block;
          if (from == to)
            block = Matrix::identity(r);
          else if (from == 1 && to == 2)
            block = piece.link->at(deg);
          else
            throw InvariantError("random diagram piece is not convex");
          mats.at(deg).add_block(start(q, k, deg), start(q2, k, deg), block);
        }
      }
      std::map<int, Matrix> built;
      for (auto& [deg, b] : mats) built.emplace(deg, std::move(b).build());
      arrows.emplace(Diagram::ArrowKey{q, q2}, ChainMap(values[q2], values[q], std::move(built)));
    }

  if (!opts.change_basis) return Diagram(shape, opts.ring, std::move(values), std::move(arrows));

  std::vector<BasisChange> change;
  for (std::size_t q = 0; q < n; ++q) change.push_back(random_basis_change(rng, values[q]));
  std::vector<ComplexPtr> new_values;
  for (const auto& c : change) new_values.push_back(c.complex);
  std::map<Diagram::ArrowKey, ChainMap> new_arrows;
  for (const auto& [key, map] : arrows)
    new_arrows.emplace(key,
                       change[key.first].forward.after(map.after(change[key.second].backward)));
  return Diagram(shape, opts.ring, std::move(new_values), std::move(new_arrows));
}

FinitePoset random_poset(Rng& rng, std::size_t n, int edge_percent) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.chance(edge_percent)) rel.emplace_back(ids[i], ids[j]);
  return FinitePoset::from_relations(std::move(ids), rel);
}

IdealCover random_ideal_cover(Rng& rng, const FinitePoset& p, std::size_t count) {
  if (count == 0) throw InputError("cover needs at least one ideal");
  std::vector<std::vector<std::size_t>> generators(count);
  for (std::size_t m : p.maximal_elements()) {
    const std::size_t i = rng.index(count);
    generators[i].push_back(m);
    if (count > 1 && rng.chance(30)) generators[(i + 1 + rng.index(count - 1)) % count].push_back(m);
  }
  for (auto& g : generators)
    if (p.size() > 0 && rng.chance(50)) g.push_back(rng.index(p.size()));
  IdealCover cover{p, {}};
  for (const auto& g : generators) cover.ideals.push_back(down_closure(p, g));
  return cover;
}

}  // namespace cubecalc

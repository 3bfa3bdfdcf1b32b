#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cubecalc/chain.hpp"
#include "cubecalc/holim.hpp"
#include "cubecalc/poset.hpp"

namespace cubecalc {

// Seeded generator with platform-independent draws (std distributions are
// not portable across standard libraries, so bounded draws are done here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  // Uniform in [lo, hi].
  int uniform(int lo, int hi);
  std::size_t index(std::size_t n);  // uniform in [0, n)
  bool chance(int percent);

 private:
  std::mt19937_64 engine_;
};

struct RandomComplexOptions {
  int min_degree = 0;
  int max_degree = 3;
  std::size_t max_rank = 3;
};

// Complex in split form: per degree n the basis is [homology | tops | bottoms]
// where tops in degree n map isomorphically onto bottoms in degree n - 1.
struct SplitComplex {
  std::map<int, std::size_t> homology, tops, bottoms;
  ChainComplex complex;
};

SplitComplex random_split_complex(Rng& rng, Ring ring, const RandomComplexOptions& opts);
SplitComplex split_complex(Ring ring, std::map<int, std::size_t> homology,
                           std::map<int, std::size_t> pairs_down_from);
// Random chain map between split complexes (cycles go to random cycles,
// tops go anywhere, bottoms follow).
ChainMap random_split_map(Rng& rng, const SplitComplex& src, const ComplexPtr& src_ptr,
                          const SplitComplex& tgt, const ComplexPtr& tgt_ptr);

// Random invertible integer matrix with integer inverse.
std::pair<Matrix, Matrix> random_unimodular(Rng& rng, std::size_t n);

struct BasisChange {
  ComplexPtr complex;
  ChainMap forward;   // original -> complex
  ChainMap backward;  // complex -> original
};

// Conjugates every degree of `c` by a random unimodular change of basis.
BasisChange random_basis_change(Rng& rng, const ComplexPtr& c);

ChainComplex random_complex(Rng& rng, Ring ring, const RandomComplexOptions& opts = {});
// A random complex together with a random map into a second random complex,
// both in a randomized basis.
ChainMap random_chain_map(Rng& rng, Ring ring, const RandomComplexOptions& opts = {});

struct RandomDiagramOptions {
  Ring ring = Ring::rationals;
  RandomComplexOptions complexes{0, 3, 3};
  std::size_t max_pieces = 3;
  bool change_basis = true;
};

// Random contravariant diagram on `shape`: a direct sum of pieces that are
// constant on a convex subset, or carry a random chain map between an
// upper and a lower part, followed by a random basis change at every vertex.
Diagram random_diagram(Rng& rng, const FinitePoset& shape, const RandomDiagramOptions& opts);

// Random poset on ids p0..p{n-1}.
FinitePoset random_poset(Rng& rng, std::size_t n, int edge_percent = 35);
// Cover by `count` ideals generated by random elements; every maximal
// element is assigned to at least one ideal.
IdealCover random_ideal_cover(Rng& rng, const FinitePoset& p, std::size_t count);

}  // namespace cubecalc

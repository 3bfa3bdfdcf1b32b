#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cubecalc/chain.hpp"
#include "cubecalc/poset.hpp"

namespace cubecalc {

// A contravariant diagram of chain complexes on a finite poset: for q <= q'
// there is a map value(q') -> value(q). Arrows are stored for every strict
// pair; identities are implicit. Construction checks endpoints, the common
// ring, and that arrow(a,c) = arrow(a,b) o arrow(b,c) for all a < b < c.
class Diagram {
 public:
  using ArrowKey = std::pair<std::size_t, std::size_t>;

  Diagram(FinitePoset shape, Ring ring, std::vector<ComplexPtr> values,
          std::map<ArrowKey, ChainMap> arrows);

  // Covariant input: arrows[(q, q')] for q < q' goes value(q) -> value(q').
  // Stored on shape.opposite().
  static Diagram from_covariant(const FinitePoset& shape, Ring ring,
                                std::vector<ComplexPtr> values,
                                std::map<ArrowKey, ChainMap> arrows);

  const FinitePoset& shape() const { return shape_; }
  Ring ring() const { return ring_; }
  std::size_t size() const { return values_.size(); }
  const ComplexPtr& value(std::size_t q) const { return values_[q]; }
  // Requires q <= q2; returns value(q2) -> value(q).
  const ChainMap& arrow(std::size_t q, std::size_t q2) const;
  const std::map<ArrowKey, ChainMap>& arrows() const { return arrows_; }

  // Full subdiagram on `members`; element i of the result is members[i].
  Diagram restrict_to(std::span<const std::size_t> members) const;

 private:
  FinitePoset shape_;
  Ring ring_;
  std::vector<ComplexPtr> values_;
  std::map<ArrowKey, ChainMap> arrows_;
};

// Covariant cube on the subsets of `labels`: vertex(S) and maps
// vertex(S) -> vertex(S') for S contained in S'. Vertices are addressed by
// bitmask over the positions of `labels`.
class CubeDiagram {
 public:
  using Mask = std::uint32_t;

  CubeDiagram(std::vector<int> labels, Ring ring, std::vector<ComplexPtr> vertices,
              std::map<std::pair<Mask, Mask>, ChainMap> arrows);
  // Arrows given only along edges: edge(S, i) : vertex(S) -> vertex(S + i).
  // Longer arrows are composites; commutativity is checked.
  template <class EdgeFn>
  static CubeDiagram from_edges(std::vector<int> labels, Ring ring,
                                std::vector<ComplexPtr> vertices, EdgeFn edge);

  std::size_t dimension() const { return labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  Ring ring() const { return diagram_.ring(); }
  const ComplexPtr& vertex(Mask s) const { return diagram_.value(s); }
  // vertex(small) -> vertex(large), small a subset of large.
  ChainMap arrow(Mask small, Mask large) const;
  // Underlying contravariant diagram on the opposite of the power set.
  const Diagram& diagram() const { return diagram_; }

  // Face spanned by the coordinates outside `fixed`, with fixed coordinates
  // set as in `value`. Result labels keep the free coordinates in order.
  CubeDiagram face(Mask fixed, Mask value) const;

 private:
  static Diagram build(const std::vector<int>& labels, Ring ring,
                       std::vector<ComplexPtr> vertices,
                       std::map<std::pair<Mask, Mask>, ChainMap> arrows);
  std::vector<int> labels_;
  Diagram diagram_;
};

// Cube whose vertex(S) is element `element_of_mask[S]` of a diagram given
// in covariant form (that is, a Diagram on the opposite of the poset whose
// order the cube follows).
CubeDiagram extract_cube(const Diagram& covariant, std::vector<int> labels,
                         std::span<const std::size_t> element_of_mask);

// The nerve double complex of a diagram and its bookkeeping.
//
// Level p holds one copy of value(q0) for every strict chain q0 < ... < qp.
// A class of value-degree s at level p has total degree s - p. The total
// differential is d_value + (-1)^t delta, where delta = sum_i (-1)^i d_i and
// the face d_0 (dropping q0) applies arrow(q0 <= q1).
class Totalization {
 public:
  explicit Totalization(const Diagram& d);

  const ComplexPtr& complex() const { return complex_; }
  const std::vector<std::vector<std::vector<std::size_t>>>& chains() const { return chains_; }
  std::size_t chain_index(const std::vector<std::size_t>& chain) const;
  // Offset of the (chain, value degree) block inside its total degree; the
  // block is absent when value(q0) has rank zero in that degree.
  std::optional<std::size_t> offset(std::size_t level, std::size_t chain, int value_degree) const;

 private:
  ComplexPtr complex_;
  std::vector<std::vector<std::vector<std::size_t>>> chains_;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> chain_index_;
  std::map<std::tuple<std::size_t, std::size_t, int>, std::size_t> offsets_;
};

ChainComplex holim(const Diagram& d);

// Map of totalizations induced by a natural transformation between two
// diagrams on the same shape; components[q] : a.value(q) -> b.value(q).
ChainMap holim_map(const Diagram& a, const Totalization& ta, const Diagram& b,
                   const Totalization& tb, const std::vector<ChainMap>& components);

// Projection holim(d) -> holim(d restricted to a subposet). `sub_to_full[i]`
// is the element of d's shape that element i of the subdiagram came from.
ChainMap holim_restriction(const Diagram& d, const Totalization& full,
                           const Diagram& sub, const Totalization& part,
                           std::span<const std::size_t> sub_to_full);

// Canonical map apex -> holim(d) from a compatible family of legs
// apex -> value(q) (arrow(q <= q') o leg(q') = leg(q)).
ChainMap holim_augmentation(const ComplexPtr& apex, const std::vector<ChainMap>& legs,
                            const Diagram& d, const Totalization& td);

// Iterated homotopy limit over a product shape: holim over the second factor
// of the pointwise holims over the first. `d` lives on first.product(second)
// with element index a * second.size() + b.
ChainComplex holim_iterated(const Diagram& d, const FinitePoset& first,
                            const FinitePoset& second);

// Canonical map vertex(0) -> holim of the punctured cube.
ChainMap cube_comparison_map(const CubeDiagram& x);
ChainComplex tfiber(const CubeDiagram& x);
// Total fiber as iterated homotopy fibers, splitting off coordinate `coord`
// (position in labels) first and the rest in increasing order.
ChainComplex tfiber_iterated(const CubeDiagram& x, std::size_t coord);
Connectivity cartesian_degree(const CubeDiagram& x);

struct HomologyComparison {
  std::string description;
  HomologySummary lhs;
  HomologySummary rhs;
  bool equal() const { return lhs == rhs; }
};

// holim over the whole shape against the holim over the punctured cube of
// cover indices S -> holim over the intersection of the ideals in S.
HomologyComparison verify_ideal_decomposition(const Diagram& d, const IdealCover& cover);

struct JuxtapositionTrial {
  Connectivity first;
  Connectivity second;
  Connectivity glued;
  bool holds() const;
};

struct JuxtapositionReport {
  std::vector<JuxtapositionTrial> trials;
  bool all_hold() const;
};

// Random cubes X (face at levels 0,1) and Y (levels 1,2) of a diagram over
// P(T) x {0 < 1 < 2}, glued to Z (levels 0,2). Checks that
// cartesian_degree(Z) >= min(cartesian_degree(X), cartesian_degree(Y)).
JuxtapositionReport verify_juxtaposition(int trials, std::uint64_t seed,
                                         std::size_t base_dimension = 1);

// ---------------------------------------------------------------- template

template <class EdgeFn>
CubeDiagram CubeDiagram::from_edges(std::vector<int> labels, Ring ring,
                                    std::vector<ComplexPtr> vertices, EdgeFn edge) {
  const std::size_t k = labels.size();
  std::map<std::pair<Mask, Mask>, ChainMap> arrows;
  std::map<std::pair<Mask, Mask>, ChainMap> edges;
  for (Mask s = 0; s < (Mask{1} << k); ++s)
    for (std::size_t i = 0; i < k; ++i)
      if (!(s & (Mask{1} << i))) edges.emplace(std::pair{s, s | (Mask{1} << i)}, edge(s, i));
  for (Mask s = 0; s < (Mask{1} << k); ++s)
    for (Mask t = s + 1; t < (Mask{1} << k); ++t) {
      if ((s & ~t) != 0) continue;
      // Add the missing coordinates in increasing order.
      Mask cur = s;
      std::optional<ChainMap> acc;
      for (std::size_t i = 0; i < k; ++i) {
        const Mask bit = Mask{1} << i;
        if (!(t & bit) || (s & bit)) continue;
        const ChainMap& e = edges.at({cur, cur | bit});
        acc = acc ? e.after(*acc) : e;
        cur |= bit;
      }
      arrows.emplace(std::pair{s, t}, *acc);
    }
  return CubeDiagram(std::move(labels), ring, std::move(vertices), std::move(arrows));
}

}  // namespace cubecalc

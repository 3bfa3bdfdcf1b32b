#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubecalc/chain.hpp"
#include "cubecalc/holim.hpp"
#include "cubecalc/poset.hpp"
#include "cubecalc/random_models.hpp"

namespace cubecalc {

// Per-coordinate bitmasks S = (S_1, ..., S_m), S_i a subset of {0..j_i}.
using SubsetTuple = std::vector<std::uint32_t>;

// Covariant values on tuples of subsets: deleting more gives a map
// value(S) -> value(S') for S contained in S' coordinatewise.
class StageSupplier {
 public:
  virtual ~StageSupplier() = default;
  virtual Ring ring() const = 0;
  virtual ComplexPtr value(const SubsetTuple& s) const = 0;
  virtual ChainMap arrow(const SubsetTuple& small, const SubsetTuple& large) const = 0;
};

// The same complex everywhere, identity arrows.
class ConstantSupplier : public StageSupplier {
 public:
  explicit ConstantSupplier(ComplexPtr value) : value_(std::move(value)) {}
  Ring ring() const override { return value_->ring(); }
  ComplexPtr value(const SubsetTuple&) const override { return value_; }
  ChainMap arrow(const SubsetTuple&, const SubsetTuple&) const override;

 private:
  ComplexPtr value_;
};

// One point per interval that is not deleted: S -> link model on the points
// {i : i not in S_c} of component c, arrows the restrictions.
class LinkProjectionSupplier : public StageSupplier {
 public:
  LinkProjectionSupplier(const MultiIndex& j, int n);
  Ring ring() const override { return Ring::rationals; }
  ComplexPtr value(const SubsetTuple& s) const override;
  ChainMap arrow(const SubsetTuple& small, const SubsetTuple& large) const override;

 private:
  std::vector<std::size_t> keep(const SubsetTuple& s) const;
  MultiIndex j_;
  int n_;
};

// Values from a covariant diagram on power_set_product(j) (a Diagram on its
// opposite, as produced by Diagram::from_covariant).
class DiagramSupplier : public StageSupplier {
 public:
  DiagramSupplier(const MultiIndex& j, Diagram d);
  Ring ring() const override { return d_.ring(); }
  ComplexPtr value(const SubsetTuple& s) const override;
  ChainMap arrow(const SubsetTuple& small, const SubsetTuple& large) const override;

 private:
  std::size_t index(const SubsetTuple& s) const;
  MultiIndex j_;
  Diagram d_;
};

// Stage over the punctured product of j. Elements of `diagram` are those of
// punctured_product(j) and the diagram is stored in covariant form.
struct StageModel {
  MultiIndex j;
  std::optional<Diagram> diagram;  // empty when some entry of j is -1
  ComplexPtr stage;
};

StageModel stage_model(const MultiIndex& j, const StageSupplier& supplier);
// From a covariant diagram already on punctured_product(j).
StageModel stage_model(const MultiIndex& j, Diagram covariant);

// Tuple of subsets for element `index` of punctured_product(j) or
// power_set_product(j).
SubsetTuple subset_tuple(const FinitePoset& product_shape, std::size_t index);

// Map value(empty tuple) -> stage for a supplier defined on all tuples.
ChainMap stage_comparison_map(const MultiIndex& j, const StageSupplier& supplier);

// Random supplier that is polynomial of degree <= j: a direct sum of pieces
// C on the tuples avoiding a chosen set K_i in each coordinate, with |K_i|
// <= j_i. With `exceed` set, one piece uses a full K_i in some coordinate,
// which breaks the degree bound.
class RandomPolynomialSupplier : public StageSupplier {
 public:
  RandomPolynomialSupplier(Rng& rng, const MultiIndex& j, Ring ring, bool exceed = false);
  Ring ring() const override { return ring_; }
  ComplexPtr value(const SubsetTuple& s) const override;
  ChainMap arrow(const SubsetTuple& small, const SubsetTuple& large) const override;

 private:
  struct Piece {
    SubsetTuple avoid;
    ComplexPtr complex;
  };
  bool present(const Piece& p, const SubsetTuple& s) const;
  MultiIndex j_;
  Ring ring_;
  std::vector<Piece> pieces_;
};

// Cube R -> stage at j_R (zero where an entry is -1) and its total fiber.
struct LayerModel {
  MultiIndex j;
  CubeDiagram cube;
  ChainComplex layer;
};

// `stages` is a contravariant diagram on multidegree_downset(j, false):
// value(k) plays T_k, arrow(k <= k') is T_k' -> T_k.
LayerModel layer_model(const MultiIndex& j, const Diagram& stages);
// Stage diagram on multidegree_downset(j) obtained from one supplier: T_k is
// the holim over the part of the punctured product of j with S_i inside
// {0..k_i}, arrows are the restrictions.
Diagram stage_diagram(const MultiIndex& j, const StageSupplier& supplier);

// hofiber(T_j -> holim over the strict downset) against the layer cube.
HomologyComparison verify_layer_poset_equivalence(const MultiIndex& j, const Diagram& stages);

long long gk_connectivity(long long k, long long handle, long long n);
bool gk_converges(long long handle, long long n);

struct MultiBounds {
  std::vector<long long> first;   // j_i (n - p_i - 2) + 1 - p_i
  std::vector<long long> second;  // (j_i + 1)(n - p_i - 2) + 1 - p_other
  std::vector<bool> stagnant;     // n - p_i - 2 <= 0
  bool converges() const;
};

MultiBounds multi_convergence_bounds(const MultiIndex& j, const std::vector<long long>& p,
                                     long long n);

}  // namespace cubecalc

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cubecalc/chain.hpp"
#include "cubecalc/holim.hpp"
#include "cubecalc/poset.hpp"

namespace cubecalc {

// Number of points in each component and the ambient dimension.
struct PointSpec {
  std::vector<int> tvec;
  int n = 3;

  // Throws InputError unless m >= 1, all counts >= 0 and n >= 3.
  void validate() const;
  std::size_t point_count() const;
};

// Point `index` (1-based) of component `component` (0-based); label "a1".
struct LinkPoint {
  std::size_t component;
  int index;
  std::string label() const;
  friend auto operator<=>(const LinkPoint&, const LinkPoint&) = default;
};

// All points of a spec in the fixed component-major order.
std::vector<LinkPoint> spec_points(const PointSpec& spec);

// Edge g(low, high) between points of different components; endpoints are
// positions in the global point order, low < high.
struct LinkEdge {
  std::size_t low, high;
  friend auto operator<=>(const LinkEdge&, const LinkEdge&) = default;
};

// Zero-differential model of the partial configuration space on a subset of
// the points of `spec`. A basis monomial picks, for each point v, either
// nothing or one earlier point in another component.
struct LinkModel {
  PointSpec spec;
  std::vector<std::size_t> points;  // positions in spec_points(spec), increasing
  std::map<int, std::vector<std::vector<LinkEdge>>> monomials;  // by degree
  ComplexPtr complex;

  std::size_t rank(int degree) const { return complex->rank(degree); }
  std::string monomial_label(const std::vector<LinkEdge>& m) const;  // "g(a1,b1)", "1"
};

LinkModel link_model(const PointSpec& spec);
// Model on the points of `spec` listed in `keep` (global positions).
LinkModel link_model(const PointSpec& spec, std::vector<std::size_t> keep);

// Projection from the model on a point set to the model on a subset: a
// monomial maps to itself when all its endpoints survive and to zero otherwise.
ChainMap restriction(const LinkModel& from, const LinkModel& to);

// Cube over the point set S (j_i points in component i): vertex R is the
// model on S minus R, arrows the restrictions. Labels are 1..|S|.
CubeDiagram derivative_cube(const MultiIndex& j, int n);
HomologySummary layer_fiber_homology(const MultiIndex& j, int n);

// Poincare polynomial prod_v (1 + d(v) t^(n-1)), d(v) the number of earlier
// points in other components. Degree -> coefficient.
std::map<int, long long> poincare_oracle(const PointSpec& spec);
std::string poincare_text(const std::map<int, long long>& p);  // "1+2*t^2"
std::map<int, long long> poincare_of(const ChainComplex& c);

}  // namespace cubecalc

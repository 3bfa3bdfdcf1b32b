#include <doctest.h>

#include <functional>

#include "cubecalc/errors.hpp"
#include "cubecalc/linkmodel.hpp"
#include "test_util.hpp"

using namespace cubecalc;

namespace {

// Component of each point, component-major.
std::vector<int> components(const std::vector<int>& tvec) {
  std::vector<int> comp;
  for (std::size_t i = 0; i < tvec.size(); ++i)
    for (int k = 0; k < tvec[i]; ++k) comp.push_back(static_cast<int>(i));
  return comp;
}

// Every admissible monomial on the points in `keep`: each point chooses
// nothing or an earlier kept point of another component. Calls visit with
// the choice vector (-1 = nothing).
void enumerate(const std::vector<int>& comp, const std::vector<int>& keep,
               const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> choice(keep.size(), -1);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == keep.size()) {
      visit(choice);
      return;
    }
    choice[i] = -1;
    rec(i + 1);
    for (std::size_t e = 0; e < i; ++e)
      if (comp[keep[e]] != comp[keep[i]]) {
        choice[i] = static_cast<int>(e);
        rec(i + 1);
      }
    choice[i] = -1;
  };
  rec(0);
}

std::map<int, long long> brute_poincare(const std::vector<int>& tvec, int n) {
  const auto comp = components(tvec);
  std::vector<int> keep(comp.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = static_cast<int>(i);
  std::map<int, long long> out;
  enumerate(comp, keep, [&](const std::vector<int>& ch) {
    int edges = 0;
    for (int c : ch) edges += c >= 0;
    ++out[edges * (n - 1)];
  });
  return out;
}

// Monomials on all points whose edges touch every point.
long long full_support_count(const std::vector<int>& tvec) {
  const auto comp = components(tvec);
  std::vector<int> keep(comp.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = static_cast<int>(i);
  long long count = 0;
  enumerate(comp, keep, [&](const std::vector<int>& ch) {
    std::vector<bool> touched(ch.size(), false);
    for (std::size_t i = 0; i < ch.size(); ++i)
      if (ch[i] >= 0) touched[i] = touched[ch[i]] = true;
    count += std::all_of(touched.begin(), touched.end(), [](bool b) { return b; });
  });
  return count;
}

std::map<int, long long> poly_mul(const std::map<int, long long>& a,
                                  const std::map<int, long long>& b) {
  std::map<int, long long> out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out[i + j] += x * y;
  return out;
}

}  // namespace

TEST_CASE("Poincare polynomials of small link models") {
  CHECK(poincare_text(poincare_of(*link_model({{1, 1}, 3}).complex)) == "1+t^2");
  CHECK(poincare_text(poincare_of(*link_model({{2, 1}, 3}).complex)) == "1+2*t^2");
  CHECK(poincare_text(poincare_of(*link_model({{1, 1, 1}, 3}).complex)) == "1+3*t^2+2*t^4");
  CHECK(poincare_of(*link_model({{1, 1, 1}, 3}).complex) ==
        poly_mul({{0, 1}, {2, 1}}, {{0, 1}, {2, 2}}));
  CHECK(poincare_text(poincare_of(*link_model({{1, 1}, 4}).complex)) == "1+t^3");
  CHECK(poincare_text(poincare_of(*link_model({{2, 2}, 3}).complex)) == "1+4*t^2+4*t^4");
  CHECK(poincare_text(poincare_of(*link_model({{0, 0}, 5}).complex)) == "1");
  CHECK(poincare_text(poincare_oracle({{2, 2}, 3})) == "1+4*t^2+4*t^4");
}

TEST_CASE("link model ranks match a brute-force monomial count") {
  for (int n : {3, 4})
    for (int m = 1; m <= 3; ++m) {
      std::vector<int> t(m, 0);
      std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == m) {
          const LinkModel model = link_model({t, n});
          CHECK(poincare_of(*model.complex) == brute_poincare(t, n));
          CHECK(poincare_oracle({t, n}) == brute_poincare(t, n));
          return;
        }
        for (int k = 0; k <= left; ++k) {
          t[i] = k;
          rec(i + 1, left - k);
        }
      };
      rec(0, 5);
    }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(link_model({{1, 1}, 2}), InputError);
  CHECK_THROWS_AS(link_model({{}, 3}), InputError);
  CHECK_THROWS_AS(link_model({{1, -1}, 3}), InputError);
  CHECK_THROWS_AS(derivative_cube(MultiIndex({0, 0}), 3), InputError);
}

TEST_CASE("monomial labels and restriction") {
  const PointSpec spec{{2, 1}, 3};
  const LinkModel full = link_model(spec);
  std::vector<std::string> top;
  for (const auto& mono : full.monomials.at(2)) top.push_back(full.monomial_label(mono));
  CHECK(top == std::vector<std::string>{"g(a1,b1)", "g(a2,b1)"});
  CHECK(full.monomial_label({}) == "1");

  // Delete a2 (position 1).
  const LinkModel sub = link_model(spec, {0, 2});
  const ChainMap r = restriction(full, sub);
  CHECK(r.at(2) == testutil::mat({{1, 0}}));
  CHECK(r.at(0) == testutil::mat({{1}}));
  CHECK(restriction(full, full).is_identity());
  const LinkModel empty = link_model(spec, {});
  CHECK(restriction(full, empty).at(0) == testutil::mat({{1}}));
  CHECK(restriction(full, empty).at(2).is_zero());
  CHECK_THROWS_AS(restriction(sub, full), InputError);
}

TEST_CASE("restrictions are surjective and functorial on derivative cubes") {
  for (const auto& j : {MultiIndex({1, 1}), MultiIndex({2, 1}), MultiIndex({1, 1, 1}),
                        MultiIndex({2, 2})}) {
    const CubeDiagram x = derivative_cube(j, 3);
    const std::uint32_t full = (1u << x.dimension()) - 1;
    for (std::uint32_t s = 0; s <= full; ++s)
      for (std::uint32_t t = s; t <= full; ++t) {
        if ((s & ~t) != 0) continue;
        const ChainMap f = x.arrow(s, t);
        for (const auto& [n, r] : f.target().ranks())
          CHECK(testutil::dense_rank(f.at(n)) == r);
        for (std::uint32_t u = t; u <= full; ++u)
          if ((t & ~u) == 0) CHECK(x.arrow(t, u).after(f) == x.arrow(s, u));
      }
  }
}

TEST_CASE("the (2,1) derivative cube") {
  const CubeDiagram x = derivative_cube(MultiIndex({2, 1}), 3);
  REQUIRE(x.dimension() == 3);
  auto poly = [&](std::uint32_t s) { return poincare_text(poincare_of(*x.vertex(s))); };
  CHECK(poly(0) == "1+2*t^2");      // Link(a1 u a2, b)
  CHECK(poly(0b001) == "1+t^2");    // Link(a2, b)
  CHECK(poly(0b010) == "1+t^2");    // Link(a1, b)
  CHECK(poly(0b100) == "1");        // Link(a1 u a2, empty)
  CHECK(poly(0b011) == "1");        // Link(empty, b)
  CHECK(poly(0b111) == "1");
  CHECK(homology(tfiber(x)).is_zero());
  CHECK(cartesian_degree(x) == std::nullopt);
}

TEST_CASE("layer fibers") {
  CHECK(testutil::betti_of(layer_fiber_homology(MultiIndex({1, 1}), 3)) ==
        std::map<int, std::size_t>{{2, 1}});
  CHECK(layer_fiber_homology(MultiIndex({2, 1}), 3).is_zero());
  CHECK(testutil::betti_of(layer_fiber_homology(MultiIndex({1, 1, 1}), 3)) ==
        std::map<int, std::size_t>{{4, 2}});
  CHECK(derivative_cube(MultiIndex({1, 1}), 3).vertex(0)->rank(2) == 1);

  // Concentrated in multiples of n-1, total rank = full-support monomials.
  for (int n : {3, 4})
    for (const auto& t : std::vector<std::vector<int>>{
             {1, 1}, {2, 1}, {1, 2}, {2, 2}, {1, 1, 1}, {3, 1}, {2, 1, 1}, {1, 1, 1, 1}}) {
      const HomologySummary h = layer_fiber_homology(MultiIndex(t), n);
      for (const auto& [deg, g] : h.degrees) CHECK(deg % (n - 1) == 0);
      INFO("t size " << t.size() << " n " << n);
      CHECK(static_cast<long long>(h.total_betti()) == full_support_count(t));
    }
}

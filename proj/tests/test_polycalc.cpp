#include <doctest.h>

#include "cubecalc/errors.hpp"
#include "cubecalc/polycalc.hpp"

using namespace cubecalc;

namespace {

MultiPolynomial P(const std::string& s, std::size_t m = 0) { return MultiPolynomial::parse(s, m); }

// Terms passing a predicate, read straight off the term map.
template <class Pred>
MultiPolynomial filter(const MultiPolynomial& p, Pred keep) {
  MultiPolynomial out(p.variables());
  for (const auto& [e, c] : p.terms())
    if (keep(e)) out.add_term(e, c);
  return out;
}

MultiIndex random_index(Rng& rng, std::size_t m, int hi) {
  std::vector<int> v(m);
  for (auto& x : v) x = rng.uniform(0, hi);
  return MultiIndex(v);
}

}  // namespace

TEST_CASE("parsing and printing") {
  const MultiPolynomial p = P("7*x1*x2+3*x1+5*x2+2");
  CHECK(p.variables() == 2);
  CHECK(p.to_string() == "7*x1*x2+3*x1+5*x2+2");
  CHECK(P("2 + 5*x2 + x1*3 + 7*x2*x1").to_string() == "7*x1*x2+3*x1+5*x2+2");
  CHECK(P("x1^2*x2 - x1*x2^2").to_string() == "x1^2*x2-x1*x2^2");
  CHECK(P("1/2*x1 - 1/2*x1").is_zero());
  CHECK(P("0").to_string() == "0");
  CHECK(P("-x1", 3).variables() == 3);
  CHECK(P("3/4*x1^2").coefficient({2}) == Scalar(3, 4));
  CHECK(P("x1*x3").degree() == MultiPolynomial::Exponent{1, 0, 1});
  CHECK_THROWS_AS(P("x0"), InputError);
  CHECK_THROWS_AS(P("x1^"), InputError);
  CHECK_THROWS_AS(P("2*y"), InputError);
  CHECK_THROWS_AS(P("x3", 2), InputError);
  CHECK_THROWS_AS(P("1/0"), InputError);
}

TEST_CASE("truncations") {
  const MultiPolynomial p = P("7*x1^2*x2+3*x1+2");
  CHECK(truncate_multi(p, MultiIndex({1, 1})) == P("3*x1+2", 2));
  CHECK(truncate_multi(p, MultiIndex({2, 1})) == p);
  CHECK(truncate_multi(p, MultiIndex({5, 5})) == p);
  CHECK(truncate_multi(p, MultiIndex({0, 0})) == P("2", 2));
  CHECK(truncate_multi(p, MultiIndex({-1, 3})).is_zero());
  CHECK(truncate_total(p, 1) == P("3*x1+2", 2));
  CHECK(truncate_total(p, 3) == p);
  CHECK_THROWS_AS(truncate_multi(p, MultiIndex({1})), InputError);
}

TEST_CASE("homogeneous parts") {
  CHECK(homog_extract(P("7*x1*x2+3*x1+5*x2+2"), MultiIndex({1, 1})).to_string() == "7*x1*x2");
  CHECK(homog_extract(P("3*x1+5*x2+2"), MultiIndex({1, 1})).is_zero());
  CHECK(homog_extract(P("3*x1+5*x2+2"), MultiIndex({0, 0})) == P("2", 2));

  Rng rng(301);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng.index(3);
    const MultiPolynomial p = random_polynomial(rng, m, 3, 8);
    const MultiIndex j = random_index(rng, m, 3);
    const MultiPolynomial expected =
        filter(p, [&](const MultiPolynomial::Exponent& e) { return e == j.entries(); });
    CHECK(homog_extract(p, j) == expected);
  }
}

TEST_CASE("homogeneous parts reconstruct the polynomial") {
  Rng rng(303);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + rng.index(3);
    const MultiPolynomial p = random_polynomial(rng, m, 3, 8);
    const auto deg = p.degree();
    MultiPolynomial sum(m);
    const FinitePoset grid = multidegree_downset(MultiIndex(deg), false);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      std::vector<int> j(grid.key(g).begin(), grid.key(g).end());
      sum = sum + homog_extract(p, MultiIndex(j));
    }
    CHECK(sum == p);
  }
}

TEST_CASE("iterated truncation") {
  const MultiPolynomial p = P("x1^2*x2+x1*x2^2+x1*x2");
  CHECK(truncate_multi(truncate_multi(p, MultiIndex({2, 1})), MultiIndex({1, 2})) ==
        truncate_multi(p, MultiIndex({1, 1})));
  CHECK(verify_iterated_truncation(p, MultiIndex({2, 1}), MultiIndex({1, 2})));
  Rng rng(305);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng.index(3);
    const MultiPolynomial q = random_polynomial(rng, m, 4, 10);
    const MultiIndex j = random_index(rng, m, 4), k = random_index(rng, m, 4);
    CHECK(verify_iterated_truncation(q, j, k));
    CHECK(verify_iterated_truncation(q, j, j));
    const MultiPolynomial expected = filter(q, [&](const MultiPolynomial::Exponent& e) {
      for (std::size_t i = 0; i < m; ++i)
        if (e[i] > std::min(j[i], k[i])) return false;
      return true;
    });
    CHECK(truncate_multi(truncate_multi(q, k), j) == expected);
    // Idempotent.
    CHECK(truncate_multi(truncate_multi(q, j), j) == truncate_multi(q, j));
  }
}

TEST_CASE("total degree against the union of multidegree boxes") {
  const TwoTowersCheck c = verify_twotowers_identity(P("7*x1*x2+3*x1+5*x2+2"), 1);
  CHECK(c.holds());
  CHECK(c.total.to_string() == "3*x1+5*x2+2");
  CHECK(c.union_side.to_string() == "3*x1+5*x2+2");
  CHECK(verify_twotowers_identity(P("x1^3+x1+1"), 2).total == P("x1+1"));

  Rng rng(307);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng.index(3);
    const int k = rng.uniform(0, 4);
    const MultiPolynomial p = random_polynomial(rng, m, 4, 10);
    const TwoTowersCheck check = verify_twotowers_identity(p, k);
    CHECK(check.holds());
    const MultiPolynomial expected = filter(p, [&](const MultiPolynomial::Exponent& e) {
      int s = 0;
      for (int x : e) s += x;
      return s <= k;
    });
    CHECK(check.union_side == expected);
  }
  CHECK_THROWS_AS(verify_twotowers_identity(P("x1"), -1), InputError);
}

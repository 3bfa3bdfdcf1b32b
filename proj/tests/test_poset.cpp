#include <doctest.h>

#include <set>
#include <sstream>

#include "cubecalc/chain.hpp"
#include "cubecalc/errors.hpp"
#include "cubecalc/poset.hpp"
#include "cubecalc/random_models.hpp"

using namespace cubecalc;

namespace {

std::size_t atoms(const FinitePoset& p) {
  const auto bottom = p.minimum();
  REQUIRE(bottom);
  std::size_t count = 0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!p.less(*bottom, x)) continue;
    bool cover = true;
    for (std::size_t z = 0; z < p.size(); ++z)
      if (p.less(*bottom, z) && p.less(z, x)) cover = false;
    count += cover;
  }
  return count;
}

// "{0,1}x{1}" -> list of sets.
std::vector<std::set<int>> parse_product_id(const std::string& id) {
  std::vector<std::set<int>> out;
  std::stringstream ss(id);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::set<int> s;
    std::stringstream inner(part.substr(1, part.size() - 2));
    std::string item;
    while (std::getline(inner, item, ','))
      if (!item.empty()) s.insert(std::stoi(item));
    out.push_back(s);
  }
  return out;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("power sets") {
  const std::vector<int> t2{1, 2};
  const FinitePoset p = power_set_poset(t2);
  CHECK(p.size() == 4);
  CHECK(p.minimal_elements().size() == 1);
  CHECK(p.maximal_elements().size() == 1);
  CHECK(p.id(*p.maximum()) == "{1,2}");
  CHECK(power_set_poset(std::vector<int>{}).size() == 1);
  CHECK(power_set_poset(std::vector<int>{}).id(0) == "{}");
  const FinitePoset p3 = power_set_poset(std::vector<int>{1, 2, 3});
  CHECK(p3.size() == 8);
  CHECK(atoms(p3) == 3);
  std::vector<int> big(21);
  for (int i = 0; i < 21; ++i) big[i] = i;
  CHECK_THROWS_AS(power_set_poset(big), InputError);
}

TEST_CASE("punctured cubes") {
  const FinitePoset p = punctured_cube(std::vector<int>{1, 2});
  CHECK(p.ids() == std::vector<std::string>{"{1}", "{2}", "{1,2}"});
  CHECK(punctured_cube(std::vector<int>{1}).size() == 1);
  CHECK(punctured_cube(std::vector<int>{1, 2, 3}).size() == 7);
  CHECK_THROWS_AS(punctured_cube(std::vector<int>{}), InputError);
}

TEST_CASE("punctured products: cardinality and order") {
  CHECK(punctured_product(MultiIndex({1, 0})).size() == 3);
  CHECK(punctured_product(MultiIndex({1, 1})).size() == 9);
  CHECK(punctured_product(MultiIndex({2, 1})).size() == 21);
  CHECK_THROWS_AS(punctured_product(MultiIndex({1, -1})), InputError);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      // Enumerate tuples of nonempty subsets directly.
      std::size_t count = 0;
      for (int s = 1; s < (1 << (a + 1)); ++s)
        for (int t = 1; t < (1 << (b + 1)); ++t) ++count;
      CHECK(punctured_product(MultiIndex({a, b})).size() == count);
    }
  CHECK(punctured_product(MultiIndex({3, 3, 3})).size() == 15 * 15 * 15);

  const FinitePoset p = punctured_product(MultiIndex({1, 1}));
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) {
      const auto sx = parse_product_id(p.id(x)), sy = parse_product_id(p.id(y));
      bool inside = true;
      for (std::size_t i = 0; i < sx.size(); ++i)
        inside = inside && std::includes(sy[i].begin(), sy[i].end(), sx[i].begin(), sx[i].end());
      CHECK(p.leq(x, y) == inside);
    }
  CHECK(p.check_partial_order());
}

TEST_CASE("multidegree and total degree downsets") {
  CHECK(multidegree_downset(MultiIndex({1, 1}), false).size() == 4);
  const FinitePoset strict = multidegree_downset(MultiIndex({1, 1}), true);
  CHECK(strict.size() == 3);
  CHECK(!strict.find("(1,1)"));
  CHECK(multidegree_downset(MultiIndex({2, 1}), true).size() == 5);
  const FinitePoset t = total_degree_downset(2, 1);
  CHECK(t.ids() == std::vector<std::string>{"(0,0)", "(0,1)", "(1,0)"});
  CHECK(total_degree_downset(2, 2).size() == 6);
  for (int m = 1; m <= 3; ++m)
    for (int k = 0; k <= 4; ++k)
      CHECK(total_degree_downset(m, k).size() == static_cast<std::size_t>(binomial(m + k, m)));
  const FinitePoset d = multidegree_downset(MultiIndex({2, 2}), false);
  CHECK(d.leq(*d.find("(0,1)"), *d.find("(1,2)")));
  CHECK(!d.leq(*d.find("(0,2)"), *d.find("(1,1)")));
}

TEST_CASE("jsubr decrements the chosen coordinates") {
  const MultiIndex j({2, 1});
  const std::vector<std::size_t> first{0}, none{}, both{0, 1};
  CHECK(jsubr(j, first) == MultiIndex({1, 1}));
  CHECK(jsubr(j, none) == j);
  CHECK(jsubr(j, both) == MultiIndex({1, 0}));
  CHECK(jsubr_mask(MultiIndex({0, 3}), 1u) == MultiIndex({-1, 3}));
  CHECK_THROWS_AS(MultiIndex({-2}), InputError);
  CHECK(parse_multi_index("(2,1)") == j);
  CHECK(parse_multi_index("2,1") == j);
  CHECK(j.id() == "(2,1)");
  CHECK(MultiIndex({1, 0}).leq(MultiIndex({1, 2})));
  CHECK(!MultiIndex({2, 0}).leq(MultiIndex({1, 2})));
}

TEST_CASE("ideals") {
  const FinitePoset z = multidegree_downset(MultiIndex({1, 1}), false);
  CHECK(is_ideal(z, std::vector<std::string>{"(0,0)", "(1,0)"}));
  CHECK(!is_ideal(z, std::vector<std::string>{"(1,1)"}));
  CHECK(is_ideal(punctured_cube(std::vector<int>{1, 2}), std::vector<std::string>{"{1}", "{2}"}));
  CHECK_THROWS_AS(is_ideal(z, std::vector<std::string>{"(5,5)"}), InputError);

  IdealCover bad{z, {{0}}};
  CHECK_THROWS_AS(bad.validate(), InputError);
  IdealCover good{z, {down_closure(z, std::vector<std::size_t>{*z.find("(1,0)")}),
                      down_closure(z, std::vector<std::size_t>{*z.find("(1,1)")})}};
  CHECK_NOTHROW(good.validate());
  CHECK(good.intersection(3u).size() == 2);
}

TEST_CASE("cover identities hold exhaustively") {
  for (int m = 1; m <= 3; ++m)
    for (int bound = 0; bound <= 4; ++bound)
      for (const auto& check : verify_cover_identities(m, bound)) {
        INFO("m=" << m << " bound=" << bound << " " << check.name << " " << check.counterexample);
        CHECK(check.passed);
        CHECK(check.cases > 0);
      }
  CHECK_THROWS_AS(verify_cover_identities(4, 1), InputError);
}

TEST_CASE("order complexes") {
  const FinitePoset chain =
      FinitePoset::from_relations({"a", "b"}, {{"a", "b"}});
  HomologySummary h = homology(order_complex(chain));
  CHECK(h.to_string() == "H0=Z");
  h = homology(order_complex(punctured_cube(std::vector<int>{1, 2})));
  CHECK(h.to_string() == "H0=Z");
  const FinitePoset anti = FinitePoset::from_relations({"a", "b"}, {});
  h = homology(order_complex(anti));
  CHECK(h.betti(0) == 2);
  CHECK(h.total_betti() == 2);
  // Boundary of a square: four elements, two minimal below two maximal.
  const FinitePoset circle = FinitePoset::from_relations(
      {"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
  h = homology(order_complex(circle));
  CHECK(h.betti(0) == 1);
  CHECK(h.betti(1) == 1);
}

TEST_CASE("posets with a maximum have contractible order complexes") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.index(7);
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.chance(30)) rel.emplace_back(ids[i], ids[j]);
    ids.push_back("top");
    for (std::size_t i = 0; i < n; ++i) rel.emplace_back(ids[i], "top");
    const FinitePoset p = FinitePoset::from_relations(ids, rel);
    CHECK(p.check_partial_order());
    CHECK(homology(order_complex(p)).to_string() == "H0=Z");
  }
}

TEST_CASE("construction checks") {
  CHECK_THROWS_AS(FinitePoset::from_relations({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InputError);
  CHECK_THROWS_AS(FinitePoset::from_relations({"a", "a"}, {}), InputError);
  CHECK_THROWS_AS(FinitePoset::from_closure({"a", "b"}, {{true, true}, {false, false}}),
                  InputError);
  const FinitePoset p = FinitePoset::from_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(p.leq(0, 2));
  CHECK(p.opposite().leq(2, 0));
  CHECK(!p.opposite().leq(0, 2));
  const FinitePoset sq = p.product(p);
  CHECK(sq.size() == 9);
  CHECK(sq.leq(0 * 3 + 1, 2 * 3 + 1));
  CHECK(!sq.leq(0 * 3 + 2, 2 * 3 + 1));
  CHECK(sq.check_partial_order());
  CHECK(p.sorted_relations().size() == 6);
}

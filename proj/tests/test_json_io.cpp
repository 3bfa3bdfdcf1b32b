#include <doctest.h>

#include <numeric>

#include "cubecalc/errors.hpp"
#include "cubecalc/json_io.hpp"
#include "cubecalc/linkmodel.hpp"
#include "cubecalc/random_models.hpp"
#include "test_util.hpp"

using namespace cubecalc;

TEST_CASE("complexes round trip") {
  Rng rng(401);
  for (int trial = 0; trial < 20; ++trial) {
    const Ring ring = trial % 2 ? Ring::integers : Ring::rationals;
    const ChainComplex c = random_complex(rng, ring);
    const Json j = to_json(c);
    CHECK(j["coeff"] == ring_name(ring));
    CHECK(complex_from_json(parse_json_text(j.dump(), "test")) == c);
  }
  const ChainComplex labelled = *link_model({{1, 1}, 3}).complex;
  CHECK(complex_from_json(to_json(labelled)) == labelled);
}

TEST_CASE("complex input format") {
  const Json j = parse_json_text(
      R"({"coeff":"Q","ranks":{"0":2,"1":1},"diff":{"1":[["1"],["-1"]]}})", "inline");
  const ChainComplex c = complex_from_json(j);
  CHECK(homology(c).to_string() == "H0=Q");
  const Json frac = parse_json_text(R"({"coeff":"Q","ranks":{"0":1,"1":1},"diff":{"1":[["1/2"]]}})",
                                    "inline");
  CHECK(complex_from_json(frac).diff(1).at(0, 0) == Scalar(1, 2));
  CHECK_THROWS_AS(complex_from_json(parse_json_text(
                      R"({"coeff":"Z","ranks":{"0":1,"1":1},"diff":{"1":[["1/2"]]}})", "x")),
                  InputError);
  CHECK_THROWS_AS(complex_from_json(parse_json_text(R"({"coeff":"R","ranks":{}})", "x")),
                  InputError);
  CHECK_THROWS_AS(complex_from_json(parse_json_text(R"({"coeff":"Q","ranks":{"a":1}})", "x")),
                  InputError);
  CHECK_THROWS_AS(
      complex_from_json(parse_json_text(
          R"({"coeff":"Q","ranks":{"0":1,"1":1},"diff":{"1":[["1","2"]]}})", "x")),
      InputError);
}

TEST_CASE("malformed JSON reports a location") {
  try {
    parse_json_text("{\"coeff\": \"Q\",\n \"ranks\": {", "bad.json");
    FAIL("no exception");
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("bad.json") != std::string::npos);
    CHECK(what.find("line") != std::string::npos);
  }
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("posets and diagrams round trip") {
  Rng rng(403);
  for (int trial = 0; trial < 10; ++trial) {
    const FinitePoset p = random_poset(rng, 1 + rng.index(5));
    CHECK(poset_from_json(to_json(p)) == p);
    RandomDiagramOptions o;
    const Diagram d = random_diagram(rng, p, o);
    const Diagram back = diagram_from_json(parse_json_text(to_json(d).dump(), "t"));
    CHECK(back.shape() == p);
    for (std::size_t q = 0; q < p.size(); ++q) CHECK(*back.value(q) == *d.value(q));
    for (const auto& [key, f] : d.arrows()) CHECK(back.arrow(key.first, key.second) == f);
    CHECK(homology(holim(back)) == homology(holim(d)));
  }
}

TEST_CASE("covariant diagrams, composed arrows and cubes") {
  const Json j = parse_json_text(R"({
    "poset": {"elements": ["{}", "{1}", "{2}", "{1,2}"],
              "relations": [["{}", "{1}"], ["{}", "{2}"], ["{1}", "{1,2}"], ["{2}", "{1,2}"]]},
    "variance": "covariant",
    "values": {
      "{}":    {"coeff": "Q", "ranks": {"2": 1}},
      "{1}":   {"coeff": "Q", "ranks": {"2": 1}},
      "{2}":   {"coeff": "Q", "ranks": {}},
      "{1,2}": {"coeff": "Q", "ranks": {}}
    },
    "arrows": {
      "{}<={1}": {"2": [["0"]]},
      "{}<={2}": {},
      "{1}<={1,2}": {},
      "{2}<={1,2}": {}
    }
  })", "cube");
  const CubeDiagram x = cube_from_json(j);
  CHECK(x.dimension() == 2);
  CHECK(x.labels() == std::vector<int>{1, 2});
  CHECK(x.arrow(0, 3).mats().empty());
  CHECK(cartesian_degree(x) == 1);

  Json missing = j;
  missing["arrows"].erase("{}<={1}");
  CHECK_THROWS_AS(diagram_from_json(missing), InputError);
  Json bad_key = j;
  bad_key["arrows"]["{1}<={2}"] = Json::object();
  CHECK_THROWS_AS(diagram_from_json(bad_key), InputError);
  Json contra = j;
  contra["variance"] = "contravariant";
  CHECK_THROWS_AS(cube_from_json(contra), InputError);
}

TEST_CASE("homology reports") {
  const ChainComplex c = testutil::spheres(Ring::rationals, {0, 2});
  const Json r = homology_report(c);
  CHECK(r.contains("betti"));
  const Json t = betti_table(homology(c), 0, 3);
  CHECK(t.dump() == R"({"0":1,"1":0,"2":1,"3":0})");
  const Json z = to_json(homology(ChainComplex(Ring::integers, {{0, 1}, {1, 1}},
                                               {{1, testutil::mat({{3}})}})));
  CHECK(z["degrees"]["0"]["torsion"] == Json::array({"3"}));
  CHECK(z["text"] == "H0=Z/3");
}

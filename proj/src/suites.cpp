#include "cubecalc/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "cubecalc/errors.hpp"
#include "cubecalc/holim.hpp"
#include "cubecalc/linkmodel.hpp"
#include "cubecalc/polycalc.hpp"
#include "cubecalc/random_models.hpp"
#include "cubecalc/tower.hpp"

namespace cubecalc {

Json to_json(const SuiteReport& r) {
  Json out;
  out["suite"] = r.suite;
  out["anchor"] = r.anchor;
  out["seed"] = r.seed;
  out["trials"] = r.trials;
  out["cases"] = r.cases;
  out["passed"] = r.passed;
  out["counterexample"] = r.counterexample;
  return out;
}

unsigned thread_count() {
  if (const char* env = std::getenv("CUBECALC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_trials(const std::string& suite, const std::string& anchor, std::uint64_t seed,
                       int trials, const std::function<TrialOutcome(int)>& trial) {
  if (trials < 0) throw InputError("trial count must be nonnegative");
  std::vector<TrialOutcome> results(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < trials; i = next++) {
      try {
        results[i] = trial(i);
      } catch (const std::exception& e) {
        results[i] = TrialOutcome{false, 1, Json{{"error", e.what()}}};
      }
    }
  };
  const unsigned workers = std::min<unsigned>(thread_count(), std::max(trials, 1));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SuiteReport r{suite, anchor, seed, trials, 0, true, nullptr};
  for (int i = 0; i < trials; ++i) {
    r.cases += results[i].cases;
    if (!results[i].passed && r.passed) {
      r.passed = false;
      r.counterexample = results[i].detail;
      r.counterexample["trial"] = i;
    }
  }
  return r;
}

namespace {

TrialOutcome compare(const HomologyComparison& c, Json context) {
  TrialOutcome out;
  out.passed = c.equal();
  if (!out.passed) {
    context["description"] = c.description;
    context["lhs"] = to_json(c.lhs);
    context["rhs"] = to_json(c.rhs);
    out.detail = std::move(context);
  }
  return out;
}

RandomDiagramOptions diagram_options(Ring ring) {
  RandomDiagramOptions opts;
  opts.ring = ring;
  return opts;
}

SuiteReport ideal_decomposition_suite(std::uint64_t seed, int trials, Ring ring) {
  return run_trials("ideal-decomp", "holim over a union of ideals", seed, trials, [&](int t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    const FinitePoset p = random_poset(rng, 1 + rng.index(8));
    const IdealCover cover = random_ideal_cover(rng, p, 2 + rng.index(2));
    const Diagram d = random_diagram(rng, p, diagram_options(ring));
    Json ctx;
    ctx["poset"] = to_json(p);
    ctx["ideals"] = cover.ideals;
    const HomologyComparison c = verify_ideal_decomposition(d, cover);
    if (!c.equal()) ctx["diagram"] = to_json(d);
    return compare(c, ctx);
  });
}

SuiteReport cube_tfiber_suite(std::uint64_t seed, int trials, Ring ring) {
  return run_trials("cube-tfiber", "total fiber as an iterated homotopy fiber", seed, trials,
                    [&](int t) {
                      Rng rng(seed, static_cast<std::uint64_t>(t));
                      const std::size_t dim = 1 + static_cast<std::size_t>(t) % 3;
                      std::vector<int> labels(dim);
                      std::iota(labels.begin(), labels.end(), 1);
                      const Diagram d = random_diagram(rng, power_set_poset(labels).opposite(),
                                                       diagram_options(ring));
                      std::vector<std::size_t> element(std::size_t{1} << dim);
                      std::iota(element.begin(), element.end(), 0);
                      const CubeDiagram cube = extract_cube(d, labels, element);
                      const HomologySummary direct = homology(tfiber(cube));
                      TrialOutcome out;
                      out.cases = dim;
                      for (std::size_t c = 0; c < dim; ++c) {
                        const HomologySummary iter = homology(tfiber_iterated(cube, c));
                        if (!(iter == direct) && out.passed) {
                          out.passed = false;
                          out.detail = Json{{"coordinate", c},
                                            {"tfiber", to_json(direct)},
                                            {"iterated", to_json(iter)},
                                            {"cube", to_json(d, true)}};
                        }
                      }
                      return out;
                    });
}

SuiteReport holim_product_suite(std::uint64_t seed, int trials, Ring ring) {
  return run_trials("holim-product", "holim over a product poset as an iterated holim", seed,
                    trials, [&](int t) {
                      Rng rng(seed, static_cast<std::uint64_t>(t));
                      auto factor = [&]() {
                        if (rng.chance(50)) return random_poset(rng, 1 + rng.index(3));
                        std::vector<int> labels(1 + rng.index(2));
                        std::iota(labels.begin(), labels.end(), 0);
                        return punctured_cube(labels).opposite();
                      };
                      const FinitePoset a = factor();
                      const FinitePoset b = factor();
                      const Diagram d = random_diagram(rng, a.product(b), diagram_options(ring));
                      HomologyComparison c{"holim vs iterated holim", homology(holim(d)),
                                           homology(holim_iterated(d, a, b))};
                      return compare(c, Json{{"first", to_json(a)}, {"second", to_json(b)}});
                    });
}

SuiteReport cover_identity_suite(std::uint64_t seed) {
  SuiteReport r{"cover-identities", "ideal covers of multidegree posets", seed, 0, 0, true,
                nullptr};
  for (int m = 1; m <= 3; ++m)
    for (int bound = 0; bound <= 4; ++bound) {
      ++r.trials;
      for (const auto& check : verify_cover_identities(m, bound)) {
        r.cases += check.cases;
        if (!check.passed && r.passed) {
          r.passed = false;
          r.counterexample = Json{{"m", m},
                                  {"bound", bound},
                                  {"identity", check.name},
                                  {"detail", check.counterexample}};
        }
      }
    }
  return r;
}

MultiIndex random_index(Rng& rng, std::size_t m, int hi) {
  std::vector<int> e(m);
  for (auto& x : e) x = rng.uniform(0, hi);
  return MultiIndex(e);
}

SuiteReport poly_homog_suite(std::uint64_t seed, int trials) {
  return run_trials("poly-homog", "homogeneous part by inclusion-exclusion over j_R", seed,
                    trials, [&](int t) {
                      Rng rng(seed, static_cast<std::uint64_t>(t));
                      const std::size_t m = 1 + rng.index(3);
                      const MultiPolynomial p = random_polynomial(rng, m, 3, 8);
                      const MultiIndex j = random_index(rng, m, 3);
                      MultiPolynomial filter(m);
                      filter.add_term(j.entries(), p.coefficient(j.entries()));
                      TrialOutcome out;
                      const MultiPolynomial h = homog_extract(p, j);
                      if (!(h == filter)) {
                        out.passed = false;
                        out.detail = Json{{"poly", p.to_string()},
                                          {"degree", j.id()},
                                          {"extracted", h.to_string()},
                                          {"expected", filter.to_string()}};
                      }
                      return out;
                    });
}

SuiteReport poly_iterated_suite(std::uint64_t seed, int trials) {
  return run_trials("poly-iterated", "iterated truncation is truncation at the minimum", seed,
                    trials, [&](int t) {
                      Rng rng(seed, static_cast<std::uint64_t>(t));
                      const std::size_t m = 1 + rng.index(3);
                      const MultiPolynomial p = random_polynomial(rng, m, 4, 10);
                      const MultiIndex j = random_index(rng, m, 4);
                      const MultiIndex k = random_index(rng, m, 4);
                      TrialOutcome out;
                      if (!verify_iterated_truncation(p, j, k)) {
                        out.passed = false;
                        out.detail =
                            Json{{"poly", p.to_string()}, {"j", j.id()}, {"k", k.id()}};
                      }
                      return out;
                    });
}

SuiteReport poly_twotowers_suite(std::uint64_t seed, int trials) {
  return run_trials("poly-twotowers", "total-degree truncation from the multidegree cover", seed,
                    trials, [&](int t) {
                      Rng rng(seed, static_cast<std::uint64_t>(t));
                      const std::size_t m = 1 + rng.index(3);
                      const int k = rng.uniform(0, 4);
                      const MultiPolynomial p = random_polynomial(rng, m, 4, 10);
                      const TwoTowersCheck c = verify_twotowers_identity(p, k);
                      TrialOutcome out;
                      if (!c.holds()) {
                        out.passed = false;
                        out.detail = Json{{"poly", p.to_string()},
                                          {"k", k},
                                          {"total", c.total.to_string()},
                                          {"union", c.union_side.to_string()}};
                      }
                      return out;
                    });
}

SuiteReport juxtaposition_suite(std::uint64_t seed, int trials) {
  const JuxtapositionReport rep = verify_juxtaposition(trials, seed);
  SuiteReport r{"juxtaposition", "gluing cubes along a shared face", seed, trials, 0, true,
                nullptr};
  for (std::size_t i = 0; i < rep.trials.size(); ++i) {
    ++r.cases;
    const auto& t = rep.trials[i];
    if (!t.holds() && r.passed) {
      r.passed = false;
      r.counterexample = Json{{"trial", i},
                              {"first", connectivity_text(t.first)},
                              {"second", connectivity_text(t.second)},
                              {"glued", connectivity_text(t.glued)}};
    }
  }
  return r;
}

SuiteReport layer_poset_suite(std::uint64_t seed, int trials, Ring ring) {
  return run_trials("layer-poset", "layer over the strict downset as a cube total fiber", seed,
                    trials, [&](int t) {
                      Rng rng(seed, static_cast<std::uint64_t>(t));
                      const std::size_t m = 1 + rng.index(2);
                      const MultiIndex j = random_index(rng, m, 2);
                      const Diagram stages = random_diagram(rng, multidegree_downset(j, false),
                                                            diagram_options(ring));
                      return compare(verify_layer_poset_equivalence(j, stages),
                                     Json{{"j", j.id()}});
                    });
}

SuiteReport link_rank_suite(std::uint64_t seed) {
  SuiteReport r{"link-ranks", "partial configuration space ranks vs fibration product", seed, 0,
                0, true, nullptr};
  for (int n = 3; n <= 4; ++n)
    for (std::size_t m = 1; m <= 3; ++m) {
      std::vector<int> t(m, 0);
      auto walk = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == m) {
          ++r.trials;
          const PointSpec spec{t, n};
          const auto model = poincare_of(*link_model(spec).complex);
          const auto oracle = poincare_oracle(spec);
          ++r.cases;
          if (model != oracle && r.passed) {
            r.passed = false;
            r.counterexample = Json{{"tvec", t},
                                    {"n", n},
                                    {"model", poincare_text(model)},
                                    {"oracle", poincare_text(oracle)}};
          }
          return;
        }
        for (int v = 0; v <= left; ++v) {
          t[i] = v;
          self(self, i + 1, left - v);
        }
      };
      walk(walk, 0, 5);
    }
  return r;
}

SuiteReport stage_polynomial_suite(std::uint64_t seed, int trials, Ring ring) {
  return run_trials("stage-polynomial", "polynomial functors agree with their finite stage", seed,
                    trials, [&](int t) {
                      Rng rng(seed, static_cast<std::uint64_t>(t));
                      const std::size_t m = 1 + rng.index(2);
                      const MultiIndex j = random_index(rng, m, 1);
                      const bool exceed = t % 4 == 3;
                      const RandomPolynomialSupplier supplier(rng, j, ring, exceed);
                      const Connectivity c = connectivity(stage_comparison_map(j, supplier));
                      TrialOutcome out;
                      out.passed = exceed ? c.has_value() : !c.has_value();
                      if (!out.passed)
                        out.detail = Json{{"j", j.id()},
                                          {"exceeds_degree", exceed},
                                          {"connectivity", connectivity_text(c)}};
                      return out;
                    });
}

SuiteReport chain_euler_suite(std::uint64_t seed, int trials, Ring ring) {
  return run_trials("chain-euler", "Euler characteristic of a homotopy fiber", seed, trials,
                    [&](int t) {
                      Rng rng(seed, static_cast<std::uint64_t>(t));
                      const ChainMap f = random_chain_map(rng, ring);
                      const long long lhs = hofiber(f).euler_characteristic();
                      const long long rhs = f.source().euler_characteristic() -
                                            f.target().euler_characteristic();
                      TrialOutcome out;
                      out.passed = lhs == rhs;
                      if (!out.passed) out.detail = Json{{"hofiber", lhs}, {"difference", rhs}};
                      return out;
                    });
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"ideal-decomp",  "cube-tfiber",    "holim-product",  "cover-identities",
          "poly-homog",    "poly-iterated",  "poly-twotowers", "juxtaposition",
          "layer-poset",   "link-ranks",     "stage-polynomial", "chain-euler"};
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials, Ring ring) {
  if (trials < 0) throw InputError("trial count must be nonnegative");
  if (name == "ideal-decomp") return ideal_decomposition_suite(seed, trials, ring);
  if (name == "cube-tfiber") return cube_tfiber_suite(seed, trials, ring);
  if (name == "holim-product") return holim_product_suite(seed, trials, ring);
  if (name == "cover-identities") return cover_identity_suite(seed);
  if (name == "poly-homog") return poly_homog_suite(seed, trials);
  if (name == "poly-iterated") return poly_iterated_suite(seed, trials);
  if (name == "poly-twotowers") return poly_twotowers_suite(seed, trials);
  if (name == "juxtaposition") return juxtaposition_suite(seed, trials);
  if (name == "layer-poset") return layer_poset_suite(seed, trials, ring);
  if (name == "link-ranks") return link_rank_suite(seed);
  if (name == "stage-polynomial") return stage_polynomial_suite(seed, trials, ring);
  if (name == "chain-euler") return chain_euler_suite(seed, trials, ring);
  std::string known;
  for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
  throw InputError("unknown suite '" + name + "' (known: " + known + ")");
}

}  // namespace cubecalc

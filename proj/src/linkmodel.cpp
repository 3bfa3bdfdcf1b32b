#include "cubecalc/linkmodel.hpp"

#include <algorithm>
#include <numeric>

#include "cubecalc/errors.hpp"

namespace cubecalc {

void PointSpec::validate() const {
  if (tvec.empty()) throw InputError("point spec needs at least one component");
  if (tvec.size() > 26) throw InputError("at most 26 components are supported");
  for (int t : tvec)
    if (t < 0) throw InputError("point counts must be nonnegative");
  if (n < 3) throw InputError("ambient dimension must be at least 3");
}

std::size_t PointSpec::point_count() const {
  return static_cast<std::size_t>(std::accumulate(tvec.begin(), tvec.end(), 0));
}

std::string LinkPoint::label() const {
  return std::string(1, static_cast<char>('a' + component)) + std::to_string(index);
}

std::vector<LinkPoint> spec_points(const PointSpec& spec) {
  std::vector<LinkPoint> out;
  for (std::size_t c = 0; c < spec.tvec.size(); ++c)
    for (int i = 1; i <= spec.tvec[c]; ++i) out.push_back({c, i});
  return out;
}

std::string LinkModel::monomial_label(const std::vector<LinkEdge>& m) const {
  if (m.empty()) return "1";
  const auto all = spec_points(spec);
  std::string s;
  for (const auto& e : m) s += "g(" + all[e.low].label() + "," + all[e.high].label() + ")";
  return s;
}

LinkModel link_model(const PointSpec& spec) {
  spec.validate();
  std::vector<std::size_t> keep(spec.point_count());
  std::iota(keep.begin(), keep.end(), 0);
  return link_model(spec, std::move(keep));
}

LinkModel link_model(const PointSpec& spec, std::vector<std::size_t> keep) {
  spec.validate();
  const auto all = spec_points(spec);
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end() ||
      (!keep.empty() && keep.back() >= all.size()))
    throw InputError("kept points must be increasing positions of the point set");

  LinkModel model;
  model.spec = spec;
  model.points = std::move(keep);

  // Enumerate choices point by point; the choice for v is -1 or an index
  // into model.points before v in another component.
  std::vector<std::vector<LinkEdge>> found;
  std::vector<LinkEdge> current;
  auto walk = [&](auto&& self, std::size_t v) -> void {
    if (v == model.points.size()) {
      found.push_back(current);
      return;
    }
    self(self, v + 1);
    const std::size_t pv = model.points[v];
    for (std::size_t w = 0; w < v; ++w) {
      const std::size_t pw = model.points[w];
      if (all[pw].component == all[pv].component) continue;
      current.push_back({pw, pv});
      self(self, v + 1);
      current.pop_back();
    }
  };
  walk(walk, 0);
  std::sort(found.begin(), found.end());

  const int step = spec.n - 1;
  std::map<int, std::size_t> ranks;
  std::map<int, std::vector<std::string>> labels;
  for (auto& m : found) {
    const int deg = step * static_cast<int>(m.size());
    ++ranks[deg];
    labels[deg].push_back(model.monomial_label(m));
    model.monomials[deg].push_back(std::move(m));
  }
  model.complex = share(ChainComplex(Ring::rationals, std::move(ranks), {}, std::move(labels)));
  return model;
}

ChainMap restriction(const LinkModel& from, const LinkModel& to) {
  if (from.spec.tvec != to.spec.tvec || from.spec.n != to.spec.n)
    throw InputError("restriction between models of different point specs");
  if (!std::includes(from.points.begin(), from.points.end(), to.points.begin(), to.points.end()))
    throw InputError("restriction target is not a sub-point-set");
  std::map<int, Matrix> mats;
  for (const auto& [deg, list] : from.monomials) {
    auto it = to.monomials.find(deg);
    if (it == to.monomials.end()) continue;
    const auto& targets = it->second;
    MatrixBuilder m(targets.size(), list.size());
    for (std::size_t c = 0; c < list.size(); ++c) {
      auto pos = std::lower_bound(targets.begin(), targets.end(), list[c]);
      if (pos != targets.end() && *pos == list[c])
        m.add(static_cast<std::size_t>(pos - targets.begin()), c, 1);
    }
    mats.emplace(deg, std::move(m).build());
  }
  return ChainMap(from.complex, to.complex, std::move(mats));
}

CubeDiagram derivative_cube(const MultiIndex& j, int n) {
  if (!j.all_nonnegative()) throw InputError("derivative needs nonnegative point counts");
  if (j.total() < 1) throw InputError("derivative needs at least one point");
  PointSpec spec{j.entries(), n};
  spec.validate();
  const std::size_t p = spec.point_count();
  if (p > 12) throw InputError("derivative cubes are limited to 12 points");
  using Mask = CubeDiagram::Mask;
  const Mask count = Mask{1} << p;
  std::vector<LinkModel> models;
  for (Mask r = 0; r < count; ++r) {
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < p; ++v)
      if (!(r & (Mask{1} << v))) keep.push_back(v);
    models.push_back(link_model(spec, std::move(keep)));
  }
  std::vector<ComplexPtr> vertices;
  for (const auto& m : models) vertices.push_back(m.complex);
  std::vector<int> labels(p);
  std::iota(labels.begin(), labels.end(), 1);
  return CubeDiagram::from_edges(std::move(labels), Ring::rationals, std::move(vertices),
                                 [&](Mask s, std::size_t i) {
                                   return restriction(models[s], models[s | (Mask{1} << i)]);
                                 });
}

HomologySummary layer_fiber_homology(const MultiIndex& j, int n) {
  return homology(tfiber(derivative_cube(j, n)));
}

std::map<int, long long> poincare_oracle(const PointSpec& spec) {
  spec.validate();
  std::vector<long long> coeff{1};  // by power of t^(n-1)
  std::size_t before = 0;
  for (std::size_t c = 0; c < spec.tvec.size(); ++c) {
    // Points of component c see all points of earlier components.
    for (int i = 0; i < spec.tvec[c]; ++i) {
      const long long d = static_cast<long long>(before);
      coeff.push_back(0);
      for (std::size_t r = coeff.size() - 1; r > 0; --r) coeff[r] += d * coeff[r - 1];
    }
    before += static_cast<std::size_t>(spec.tvec[c]);
  }
  std::map<int, long long> out;
  for (std::size_t r = 0; r < coeff.size(); ++r)
    if (coeff[r]) out[static_cast<int>(r) * (spec.n - 1)] = coeff[r];
  return out;
}

std::string poincare_text(const std::map<int, long long>& p) {
  if (p.empty()) return "0";
  std::string s;
  for (const auto& [deg, c] : p) {
    if (!s.empty()) s += "+";
    if (deg == 0) {
      s += std::to_string(c);
      continue;
    }
    if (c != 1) s += std::to_string(c) + "*";
    s += "t";
    if (deg != 1) s += "^" + std::to_string(deg);
  }
  return s;
}

std::map<int, long long> poincare_of(const ChainComplex& c) {
  std::map<int, long long> out;
  for (const auto& [deg, r] : c.ranks()) out[deg] = static_cast<long long>(r);
  return out;
}

}  // namespace cubecalc

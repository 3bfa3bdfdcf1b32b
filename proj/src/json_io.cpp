#include "cubecalc/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cubecalc/errors.hpp"

namespace cubecalc {

namespace {

int parse_degree(const std::string& key) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw InputError("degree key '" + key + "' is not an integer");
  return n;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw InputError("matrix entries must be integers or decimal strings");
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name))
    throw InputError(where + ": missing field '" + name + "'");
  return j.at(name);
}

Ring ring_from_json(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "Z") return Ring::integers;
  if (s == "Q") return Ring::rationals;
  throw InputError("coefficient ring must be \"Z\" or \"Q\", got \"" + s + "\"");
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.to_dense()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(format_scalar(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  if (j.size() != rows)
    throw InputError("matrix has " + std::to_string(j.size()) + " rows, expected " +
                     std::to_string(rows));
  std::vector<std::vector<Scalar>> dense;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw InputError("matrix row does not have " + std::to_string(cols) + " entries");
    std::vector<Scalar> r;
    for (const auto& x : row) r.push_back(scalar_from_json(x));
    dense.push_back(std::move(r));
  }
  return Matrix::from_dense(dense, cols);
}

Json to_json(const ChainComplex& c) {
  Json out;
  out["coeff"] = ring_name(c.ring());
  Json ranks = Json::object();
  for (const auto& [n, r] : c.ranks()) ranks[std::to_string(n)] = r;
  out["ranks"] = ranks;
  Json diff = Json::object();
  for (const auto& [n, d] : c.diffs()) diff[std::to_string(n)] = to_json(d);
  out["diff"] = diff;
  if (!c.labels().empty()) {
    Json labels = Json::object();
    for (const auto& [n, l] : c.labels()) labels[std::to_string(n)] = l;
    out["labels"] = labels;
  }
  return out;
}

ChainComplex complex_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("complex must be a JSON object");
  const Ring ring = j.contains("coeff") ? ring_from_json(j.at("coeff")) : Ring::rationals;
  std::map<int, std::size_t> ranks;
  for (const auto& [k, v] : field(j, "ranks", "complex").items()) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw InputError("rank in degree " + k + " must be a nonnegative integer");
    ranks[parse_degree(k)] = v.get<std::size_t>();
  }
  auto rank = [&](int n) { return ranks.count(n) ? ranks[n] : std::size_t{0}; };
  std::map<int, Matrix> diffs;
  if (j.contains("diff"))
    for (const auto& [k, v] : j.at("diff").items()) {
      const int n = parse_degree(k);
      diffs[n] = matrix_from_json(v, rank(n - 1), rank(n));
    }
  std::map<int, std::vector<std::string>> labels;
  if (j.contains("labels"))
    for (const auto& [k, v] : j.at("labels").items())
      labels[parse_degree(k)] = v.get<std::vector<std::string>>();
  return ChainComplex(ring, std::move(ranks), std::move(diffs), std::move(labels));
}

Json to_json(const ChainMap& f) {
  Json out = Json::object();
  for (const auto& [n, m] : f.mats()) out[std::to_string(n)] = to_json(m);
  return out;
}

ChainMap map_from_json(const Json& j, const ComplexPtr& source, const ComplexPtr& target) {
  if (!j.is_object()) throw InputError("chain map must be an object from degree to matrix");
  std::map<int, Matrix> mats;
  for (const auto& [k, v] : j.items()) {
    const int n = parse_degree(k);
    mats[n] = matrix_from_json(v, target->rank(n), source->rank(n));
  }
  return ChainMap(source, target, std::move(mats));
}

Json to_json(const FinitePoset& p) {
  Json out;
  std::vector<std::string> ids = p.ids();
  std::sort(ids.begin(), ids.end());
  out["elements"] = ids;
  Json rel = Json::array();
  for (const auto& [a, b] : p.sorted_relations()) rel.push_back(Json::array({a, b}));
  out["relations"] = rel;
  return out;
}

FinitePoset poset_from_json(const Json& j) {
  const auto ids = field(j, "elements", "poset").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> rel;
  if (j.contains("relations"))
    for (const auto& r : j.at("relations")) {
      if (!r.is_array() || r.size() != 2) throw InputError("relation must be a pair [a, b]");
      rel.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
    }
  return FinitePoset::from_relations(ids, rel);
}

Diagram diagram_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("diagram must be a JSON object");
  const FinitePoset given = poset_from_json(field(j, "poset", "diagram"));
  bool covariant = false;
  if (j.contains("variance")) {
    const auto v = j.at("variance").get<std::string>();
    if (v == "covariant")
      covariant = true;
    else if (v != "contravariant")
      throw InputError("variance must be \"covariant\" or \"contravariant\"");
  }
  const Json& vals = field(j, "values", "diagram");
  std::optional<Ring> ring;
  if (j.contains("coeff")) ring = ring_from_json(j.at("coeff"));
  const std::size_t n = given.size();
  std::vector<ComplexPtr> values(n);
  for (const auto& [id, v] : vals.items()) {
    auto q = given.find(id);
    if (!q) throw InputError("value given for unknown element '" + id + "'");
    ChainComplex c = complex_from_json(v);
    if (!ring && !c.is_zero()) ring = c.ring();
    values[*q] = share(std::move(c));
  }
  const Ring r = ring.value_or(Ring::rationals);
  for (std::size_t q = 0; q < n; ++q)
    if (!values[q]) throw InputError("no value given for element '" + given.id(q) + "'");

  // Arrows keyed by pairs a <= b of the given poset.
  std::map<Diagram::ArrowKey, ChainMap> given_arrows;
  auto source_of = [&](std::size_t a, std::size_t b) { return covariant ? a : b; };
  auto target_of = [&](std::size_t a, std::size_t b) { return covariant ? b : a; };
  if (j.contains("arrows"))
    for (const auto& [key, v] : j.at("arrows").items()) {
      const auto sep = key.find("<=");
      if (sep == std::string::npos) throw InputError("arrow key '" + key + "' is not 'a<=b'");
      const std::size_t a = given.index_of(key.substr(0, sep));
      const std::size_t b = given.index_of(key.substr(sep + 2));
      if (!given.leq(a, b)) throw InputError("arrow key '" + key + "' is not a relation");
      if (a == b) {
        if (!map_from_json(v, values[a], values[a]).is_identity())
          throw InvariantError("arrow '" + key + "' is not the identity");
        continue;
      }
      given_arrows.emplace(Diagram::ArrowKey{a, b},
                           map_from_json(v, values[source_of(a, b)], values[target_of(a, b)]));
    }
  // Fill missing pairs by composing through an intermediate element, in
  // order of increasing interval length.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> length;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (given.less(a, b)) {
        std::size_t len = 0;
        for (std::size_t c = 0; c < n; ++c) len += given.leq(a, c) && given.leq(c, b);
        pairs.emplace_back(a, b);
        length[{a, b}] = len;
      }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const auto& x, const auto& y) { return length[x] < length[y]; });
  for (const auto& [a, b] : pairs) {
    if (given_arrows.count({a, b})) continue;
    std::optional<std::size_t> mid;
    for (std::size_t c = 0; c < n && !mid; ++c)
      if (given.less(a, c) && given.less(c, b)) mid = c;
    if (!mid)
      throw InputError("diagram is missing the arrow '" + given.id(a) + "<=" + given.id(b) + "'");
    const ChainMap& lower = given_arrows.at({a, *mid});
    const ChainMap& upper = given_arrows.at({*mid, b});
    given_arrows.emplace(Diagram::ArrowKey{a, b},
                         covariant ? upper.after(lower) : lower.after(upper));
  }
  if (covariant) return Diagram::from_covariant(given, r, std::move(values), std::move(given_arrows));
  return Diagram(given, r, std::move(values), std::move(given_arrows));
}

Json to_json(const Diagram& d, bool covariant) {
  const FinitePoset shape = covariant ? d.shape().opposite() : d.shape();
  Json out;
  out["variance"] = covariant ? "covariant" : "contravariant";
  out["coeff"] = ring_name(d.ring());
  out["poset"] = to_json(shape);
  Json values = Json::object();
  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return shape.id(x) < shape.id(y); });
  for (std::size_t q : order) values[shape.id(q)] = to_json(*d.value(q));
  out["values"] = values;
  Json arrows = Json::object();
  for (std::size_t a : order)
    for (std::size_t b : order)
      if (shape.less(a, b))
        arrows[shape.id(a) + "<=" + shape.id(b)] =
            to_json(covariant ? d.arrow(b, a) : d.arrow(a, b));
  out["arrows"] = arrows;
  return out;
}

CubeDiagram cube_from_json(const Json& j) {
  if (!j.contains("variance") || j.at("variance") != "covariant")
    throw InputError("a cube must be given as a covariant diagram");
  const Diagram d = diagram_from_json(j);
  std::set<int> labels;
  for (const auto& id : d.shape().ids()) {
    if (id.size() < 2 || id.front() != '{' || id.back() != '}')
      throw InputError("cube element '" + id + "' is not a subset");
    std::stringstream ss(id.substr(1, id.size() - 2));
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) labels.insert(parse_degree(item));
  }
  const std::vector<int> sorted(labels.begin(), labels.end());
  if (!(d.shape().opposite() == power_set_poset(sorted)))
    throw InputError("cube poset is not the power set of its labels");
  std::vector<std::size_t> element;
  for (std::uint32_t m = 0; m < (1u << sorted.size()); ++m) {
    std::vector<int> s;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (m & (1u << i)) s.push_back(sorted[i]);
    element.push_back(d.shape().index_of(subset_id(s)));
  }
  return extract_cube(d, sorted, element);
}

Json to_json(const HomologySummary& h) {
  Json out;
  out["coeff"] = ring_name(h.ring);
  Json degrees = Json::object();
  for (const auto& [n, g] : h.degrees) {
    Json torsion = Json::array();
    for (const auto& t : g.torsion) torsion.push_back(t.get_str());
    degrees[std::to_string(n)] = Json{{"betti", g.betti}, {"torsion", torsion}};
  }
  out["degrees"] = degrees;
  out["text"] = h.to_string();
  return out;
}

Json betti_table(const HomologySummary& h, int lo, int hi) {
  Json out = Json::object();
  for (int n = lo; n <= hi; ++n) out[std::to_string(n)] = h.betti(n);
  return out;
}

Json homology_report(const ChainComplex& c) {
  const HomologySummary h = homology(c);
  Json out = to_json(h);
  out["betti"] = c.is_zero() ? Json::object() : betti_table(h, c.min_degree(), c.max_degree());
  out["zero"] = h.is_zero();
  return out;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": malformed JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

}  // namespace cubecalc

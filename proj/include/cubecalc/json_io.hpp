#pragma once

#include <string>

#include <json.hpp>

#include "cubecalc/chain.hpp"
#include "cubecalc/holim.hpp"
#include "cubecalc/poset.hpp"

namespace cubecalc {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

// {"coeff": "Z"|"Q", "ranks": {"0": 2}, "diff": {"1": [["1","-1"]]}, "labels": {...}}
Json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

// Degree -> matrix.
Json to_json(const ChainMap& f);
ChainMap map_from_json(const Json& j, const ComplexPtr& source, const ComplexPtr& target);

// {"elements": [...], "relations": [[a, b], ...]} with the full sorted order.
Json to_json(const FinitePoset& p);
FinitePoset poset_from_json(const Json& j);

// {"poset", "variance", "values": {id: complex}, "arrows": {"a<=b": map}}.
// Contravariant arrows for a <= b go value(b) -> value(a); covariant ones
// value(a) -> value(b). Arrows along cover relations are required, longer
// ones are composed when omitted. A covariant diagram is returned on the
// opposite of the given poset.
Diagram diagram_from_json(const Json& j);
// `covariant`: write d as a covariant diagram on d.shape().opposite().
Json to_json(const Diagram& d, bool covariant = false);

// Covariant diagram whose poset is the power set of its labels.
CubeDiagram cube_from_json(const Json& j);

// Homology with a Betti table over [lo, hi] (zeros included).
Json to_json(const HomologySummary& h);
Json betti_table(const HomologySummary& h, int lo, int hi);
Json homology_report(const ChainComplex& c);

// Parses text, turning syntax errors into InputError with the location.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

}  // namespace cubecalc

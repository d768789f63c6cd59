#pragma once

#include <string>
#include <vector>

#include "detlines/complex.hpp"
#include "detlines/holomorphic.hpp"
#include "json.hpp"

namespace detlines {

using Json = nlohmann::json;

// Matrices are arrays of rows of scalar strings. With the rational field every
// entry must be real.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j, ScalarKind field, size_t rows, size_t cols);

// {"field": ..., "degrees": {"j": n}, "differentials": {"j": [[...]]}}
Json complex_to_json(const ChainComplex& d, ScalarKind field = ScalarKind::gaussian);
ChainComplex complex_from_json(const Json& j);

// {"field": ..., "components": {"j": [[...]]}}; shapes are taken from the complexes.
Json chain_map_to_json(const ChainMap& a, ScalarKind field = ScalarKind::gaussian);
ChainMap chain_map_from_json(const Json& j, const ChainComplex& src, const ChainComplex& dst);

// {"field": ..., "plus": np, "minus": nm, "d_plus": [[...]], "d_minus": [[...]]}
Json z2_to_json(const Z2Complex& d, ScalarKind field = ScalarKind::gaussian);
Z2Complex z2_from_json(const Json& j);

// Complex format with polynomial strings in z.
Json family_to_json(const HoloFamily& f);
HoloFamily family_from_json(const Json& j);
Json poly_map_to_json(const PolyChainMap& a);
PolyChainMap poly_map_from_json(const Json& j, const HoloFamily& src, const HoloFamily& dst);

Json grid_to_json(const std::vector<Gaussian>& grid);
std::vector<Gaussian> grid_from_json(const Json& j);

// Reads and parses a JSON file; throws ParseError with the path on failure.
Json read_json_file(const std::string& path);

}  // namespace detlines

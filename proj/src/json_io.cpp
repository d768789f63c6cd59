#include "detlines/json_io.hpp"

#include <fstream>

namespace detlines {

namespace {

ScalarKind field_of(const Json& j) {
  if (!j.contains("field")) return ScalarKind::gaussian;
  return parse_kind(j.at("field").get<std::string>());
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

int degree_key(const std::string& k) {
  try {
    size_t used = 0;
    const int d = std::stoi(k, &used);
    if (used != k.size()) throw ParseError("bad degree key \"" + k + "\"");
    return d;
  } catch (const std::logic_error&) {
    throw ParseError("bad degree key \"" + k + "\"");
  }
}

Gaussian parse_entry(const Json& e, ScalarKind field) {
  if (!e.is_string()) throw ParseError("matrix entries must be strings");
  const std::string text = e.get<std::string>();
  if (field == ScalarKind::ratfunc) throw ParseError("ratfunc entries are not valid here");
  return Scalar::parse(text, field).to_gaussian();
}

template <class Entry, class Parse>
Matrix<Entry> parse_rows(const Json& j, size_t rows, size_t cols, Parse parse) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  if (j.size() != rows) {
    throw ParseError("matrix has " + std::to_string(j.size()) + " rows, expected " +
                     std::to_string(rows));
  }
  Matrix<Entry> m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw ParseError("matrix row " + std::to_string(r) + " does not have " +
                       std::to_string(cols) + " entries");
    }
    for (size_t c = 0; c < cols; ++c) m(r, c) = parse(row[c]);
  }
  return m;
}

GradedSpace space_from_json(const Json& j) {
  GradedSpace s;
  const Json& deg = require(j, "degrees");
  if (!deg.is_object()) throw ParseError("\"degrees\" must be an object");
  for (const auto& [k, v] : deg.items()) {
    if (!v.is_number_unsigned()) throw ParseError("degree dimensions must be nonnegative integers");
    s.dims[degree_key(k)] = v.get<size_t>();
  }
  return s;
}

Json space_to_json(const GradedSpace& s) {
  Json deg = Json::object();
  for (const auto& [j, n] : s.dims) deg[std::to_string(j)] = n;
  return deg;
}

}  // namespace

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j, ScalarKind field, size_t rows, size_t cols) {
  return parse_rows<Gaussian>(j, rows, cols, [&](const Json& e) { return parse_entry(e, field); });
}

Json complex_to_json(const ChainComplex& d, ScalarKind field) {
  Json out;
  out["field"] = kind_name(field);
  out["degrees"] = space_to_json(d.space);
  Json diffs = Json::object();
  for (const auto& [j, m] : d.diffs) {
    if (m.rows() && m.cols()) diffs[std::to_string(j)] = matrix_to_json(m);
  }
  out["differentials"] = std::move(diffs);
  return out;
}

ChainComplex complex_from_json(const Json& j) {
  const ScalarKind field = field_of(j);
  ChainComplex d;
  d.space = space_from_json(j);
  if (j.contains("differentials")) {
    for (const auto& [k, v] : j.at("differentials").items()) {
      const int deg = degree_key(k);
      d.diffs[deg] = matrix_from_json(v, field, d.dim(deg - 1), d.dim(deg));
    }
  }
  validate_complex(d);
  return d;
}

Json chain_map_to_json(const ChainMap& a, ScalarKind field) {
  Json out;
  out["field"] = kind_name(field);
  Json comps = Json::object();
  for (const auto& [j, m] : a.comps) {
    if (m.rows() && m.cols()) comps[std::to_string(j)] = matrix_to_json(m);
  }
  out["components"] = std::move(comps);
  return out;
}

ChainMap chain_map_from_json(const Json& j, const ChainComplex& src, const ChainComplex& dst) {
  const ScalarKind field = field_of(j);
  ChainMap a;
  for (const auto& [k, v] : require(j, "components").items()) {
    const int deg = degree_key(k);
    a.comps[deg] = matrix_from_json(v, field, dst.dim(deg), src.dim(deg));
  }
  validate_chain_map(src, dst, a);
  return a;
}

Json z2_to_json(const Z2Complex& d, ScalarKind field) {
  Json out;
  out["field"] = kind_name(field);
  out["plus"] = d.np;
  out["minus"] = d.nm;
  out["d_plus"] = matrix_to_json(d.dp);
  out["d_minus"] = matrix_to_json(d.dm);
  return out;
}

Z2Complex z2_from_json(const Json& j) {
  const ScalarKind field = field_of(j);
  const size_t np = require(j, "plus").get<size_t>(), nm = require(j, "minus").get<size_t>();
  Mat dp = nm && np ? matrix_from_json(require(j, "d_plus"), field, nm, np) : Mat(nm, np);
  Mat dm = nm && np ? matrix_from_json(require(j, "d_minus"), field, np, nm) : Mat(np, nm);
  Z2Complex z = Z2Complex::make(std::move(dp), std::move(dm));
  validate_z2(z);
  return z;
}

Json family_to_json(const HoloFamily& f) {
  Json out;
  out["field"] = "gaussian";
  out["degrees"] = space_to_json(f.space);
  Json diffs = Json::object();
  for (const auto& [j, m] : f.diffs) {
    if (!m.rows() || !m.cols()) continue;
    Json rows = Json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
      rows.push_back(std::move(row));
    }
    diffs[std::to_string(j)] = std::move(rows);
  }
  out["differentials"] = std::move(diffs);
  return out;
}

namespace {

Polynomial parse_poly(const Json& e) {
  if (!e.is_string()) throw ParseError("polynomial entries must be strings");
  return Polynomial::parse(e.get<std::string>());
}

Json poly_rows(const PolyMat& m) {
  Json rows = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

HoloFamily family_from_json(const Json& j) {
  HoloFamily f;
  f.space = space_from_json(j);
  if (j.contains("differentials")) {
    for (const auto& [k, v] : j.at("differentials").items()) {
      const int deg = degree_key(k);
      f.diffs[deg] = parse_rows<Polynomial>(v, f.dim(deg - 1), f.dim(deg), parse_poly);
    }
  }
  validate_family(f);
  return f;
}

Json poly_map_to_json(const PolyChainMap& a) {
  Json comps = Json::object();
  for (const auto& [j, m] : a) {
    if (m.rows() && m.cols()) comps[std::to_string(j)] = poly_rows(m);
  }
  Json out;
  out["field"] = "gaussian";
  out["components"] = std::move(comps);
  return out;
}

PolyChainMap poly_map_from_json(const Json& j, const HoloFamily& src, const HoloFamily& dst) {
  PolyChainMap a;
  for (const auto& [k, v] : require(j, "components").items()) {
    const int deg = degree_key(k);
    a[deg] = parse_rows<Polynomial>(v, dst.dim(deg), src.dim(deg), parse_poly);
  }
  validate_family_map(src, dst, a);
  return a;
}

Json grid_to_json(const std::vector<Gaussian>& grid) {
  Json out = Json::array();
  for (const auto& z : grid) out.push_back(z.str());
  return out;
}

std::vector<Gaussian> grid_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("grid must be a JSON list of scalar strings");
  std::vector<Gaussian> out;
  for (const auto& e : j) {
    const Gaussian z = parse_entry(e, ScalarKind::gaussian);
    for (const auto& w : out) {
      if (w == z) throw ParseError("grid contains the point " + z.str() + " twice");
    }
    out.push_back(z);
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace detlines

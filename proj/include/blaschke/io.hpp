#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blaschke/decompose.hpp"
#include "blaschke/error.hpp"
#include "blaschke/invariants.hpp"
#include "blaschke/moebius.hpp"
#include "blaschke/numerics.hpp"
#include "blaschke/poncelet.hpp"
#include "blaschke/product.hpp"

namespace blaschke::io {

using Json = nlohmann::json;

// nlohmann::json prints doubles with the shortest representation that reads back
// to the same bits, so every document round-trips exactly.

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::InvalidArgument, "complex numbers are encoded as [re, im]");
  const Complex z(j[0].get<Real>(), j[1].get<Real>());
  require_finite(z, "complex value");
  return z;
}

inline Json points_to_json(std::span<const Complex> pts) {
  Json out = Json::array();
  for (const Complex& z : pts) out.push_back(to_json(z));
  return out;
}

inline Json to_json(const BlaschkeProduct& b) {
  return Json{{"constant", to_json(b.constant())}, {"zeros", points_to_json(b.zeros())}};
}

inline BlaschkeProduct product_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("zeros") || !j["zeros"].is_array())
    fail(ErrorKind::InvalidArgument, "product document needs a \"zeros\" array");
  std::vector<Complex> zeros;
  for (const auto& z : j["zeros"]) zeros.push_back(complex_from_json(z));
  const Complex constant = j.contains("constant") ? complex_from_json(j["constant"]) : Complex{1};
  return BlaschkeProduct(constant, std::move(zeros));
}

inline Json to_json(const MoebiusTransform& m) {
  return Json{{"c", to_json(m.c())}, {"alpha", to_json(m.alpha())}};
}

inline Json to_json(const OrbitReport& r) {
  return Json{{"points", points_to_json(r.points)},
              {"closes", r.closes},
              {"min_pairwise_gap", std::isfinite(r.min_pairwise_gap) ? Json(r.min_pairwise_gap) : Json(nullptr)}};
}

inline Json to_json(const UnimodularSolution& s) { return Json{{"c", to_json(s.c)}, {"orbit", to_json(s.orbit)}}; }

inline Json to_json(const InvariantGroup& g) {
  return Json{{"generator", to_json(g.generator)}, {"order", g.order}};
}

inline Json to_json(const Decomposition& d) {
  return Json{{"inner", to_json(d.inner)},
              {"outer", to_json(d.outer)},
              {"source", std::string(to_string(d.source))},
              {"roundtrip_residual", d.roundtrip_residual}};
}

inline Json to_json(const PonceletEllipse& e) {
  return Json{{"foci", Json::array({to_json(e.focus1), to_json(e.focus2)})}, {"focal_sum", e.focal_sum}};
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

/// Reads a whole document from `path`, or from `in` when path is "-".
inline std::string read_text(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path);
  if (!file) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

inline BlaschkeProduct read_product(const std::string& path, std::istream& in) {
  return product_from_json(parse_json_text(read_text(path, in)));
}

}  // namespace blaschke::io

#include "gaussgeom/serialize.hpp"

#include <set>
#include <string>

namespace gaussgeom {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T field(const Json& j, const char* key) {
  const Json& v = member(j, key);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

int order_field(const Json& j) {
  const int n = field<int>(j, "n");
  if (n < 1) throw ParseError("'n' must be >= 1");
  return n;
}

}  // namespace

Json to_json(const SymMat& m) {
  Json j;
  j["n"] = m.n();
  j["vech"] = std::vector<double>(m.vech().data(), m.vech().data() + m.vech().size());
  return j;
}

SymMat symmat_from_json(const Json& j) {
  const int n = order_field(j);
  const auto v = field<std::vector<double>>(j, "vech");
  if (static_cast<int>(v.size()) != vech_size(n)) throw ParseError("'vech' length does not match 'n'");
  return SymMat::from_vech(n, Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
}

Json to_json(const McEstimate& e) {
  Json j;
  j["mean"] = e.mean;
  j["std_error"] = e.std_error;
  j["samples"] = e.samples;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["check"] = v.check;
  j["n"] = v.n;
  j["point"] = v.point ? to_json(*v.point) : Json(nullptr);
  j["max_violation"] = v.max_violation;
  j["tol"] = v.tol;
  j["pass"] = v.pass;
  return j;
}

Json to_json(const RawCubicTensor& t) {
  Json j;
  j["n"] = t.n;
  j["valence"] = 3;
  j["basis"] = "vech-lex";
  Json entries = Json::array();
  for_each_sorted_index(3, t.components.dim(), [&](const std::vector<int>& idx) {
    Json e;
    e["idx"] = idx;
    e["val"] = t.components[t.components.offset(idx)];
    entries.push_back(std::move(e));
  });
  j["entries"] = std::move(entries);
  return j;
}

RawCubicTensor raw_cubic_from_json(const Json& j) {
  const int n = order_field(j);
  if (field<int>(j, "valence") != 3) throw ParseError("'valence' must be 3");
  if (field<std::string>(j, "basis") != "vech-lex") throw ParseError("'basis' must be \"vech-lex\"");
  const Json& entries = member(j, "entries");
  if (!entries.is_array()) throw ParseError("'entries' must be an array");
  const int d = vech_size(n);
  ComponentArray comps(3, d);
  std::set<std::vector<int>> seen;
  for (const auto& e : entries) {
    const auto idx = field<std::vector<int>>(e, "idx");
    const auto val = field<double>(e, "val");
    if (idx.size() != 3) throw ParseError("'idx' must have three entries");
    for (int i : idx)
      if (i < 0 || i >= d) throw ParseError("'idx' out of range for n = " + std::to_string(n));
    if (idx[0] > idx[1] || idx[1] > idx[2]) throw ParseError("'idx' must be non-decreasing");
    if (!seen.insert(idx).second) throw ParseError("duplicate 'idx' entry");
    comps[comps.offset(idx)] = val;
  }
  fill_symmetric(comps);
  return RawCubicTensor{n, std::move(comps)};
}

Json to_json(const SymCubicPoly& p) {
  Json j;
  j["n"] = p.n();
  j["basis"] = "power-sum";
  Json c;
  c["p3"] = p.p3();
  if (auto v = p.p2p1()) c["p2p1"] = *v;
  if (auto w = p.p1_cubed()) c["p1^3"] = *w;
  j["coeffs"] = std::move(c);
  return j;
}

SymCubicPoly sym_cubic_poly_from_json(const Json& j) {
  const int n = order_field(j);
  if (field<std::string>(j, "basis") != "power-sum") throw ParseError("'basis' must be \"power-sum\"");
  const Json& c = member(j, "coeffs");
  std::vector<double> coeffs{field<double>(c, "p3")};
  if (n >= 2) coeffs.push_back(field<double>(c, "p2p1"));
  if (n >= 3) coeffs.push_back(field<double>(c, "p1^3"));
  if (n < 2 && c.contains("p2p1")) throw ParseError("'p2p1' is not a coordinate for n = 1");
  if (n < 3 && c.contains("p1^3")) throw ParseError("'p1^3' is not a coordinate for n <= 2");
  return SymCubicPoly(n, std::move(coeffs));
}

}  // namespace gaussgeom

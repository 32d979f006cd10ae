#include "hyperham/json_io.hpp"

#include "hyperham/errors.hpp"

namespace hyperham {

Json to_json(const VertexSet& s) { return Json(s.members()); }

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const EllPath& p) {
  Json j;
  j["k"] = p.k;
  j["ell"] = p.ell;
  j["order"] = p.order;
  return j;
}

Json to_json(const EllCycle& c) {
  Json j;
  j["k"] = c.k;
  j["ell"] = c.ell;
  j["order"] = c.order;
  return j;
}

Json to_json(const Validation& v) {
  Json j;
  j["valid"] = v.valid;
  if (!v.valid) {
    j["violation"] = v.violation;
    if (v.window >= 0) j["window"] = v.window;
  }
  return j;
}

Json to_json(const Absorber& a) {
  Json j;
  j["target"] = to_json(a.target);
  j["tuple"] = a.tuple;
  Json without = Json::array(), with = Json::array();
  for (const auto& p : a.without_target) without.push_back(p.order);
  for (const auto& p : a.with_target) with.push_back(p.order);
  j["without_target"] = without;
  j["with_target"] = with;
  return j;
}

Json to_json(const AbsorbDescriptor& d) {
  Json j;
  j["parts"] = d.parts;
  j["lattice"] = d.lattice;
  if (d.lattice) {
    j["a"] = d.a;
    j["a_census"] = d.a_census;
    j["m"] = d.m;
    j["base_first"] = d.base_first;
    j["base_second"] = d.base_second;
  }
  j["reserve"] = d.reserve;
  j["reserved"] = d.reserved;
  j["slots"] = d.slots;
  return j;
}

Json to_json(const PipelineReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["seed"] = r.seed;
  j["k"] = r.k;
  j["ell"] = r.ell;
  j["n"] = r.n;
  j["status"] = r.success() ? "ok" : "stage-failure";
  j["attempts"] = r.attempts;
  Json stages;
  stages["reservoir"] = {{"size", r.reservoir_size}};
  stages["absorbing_path"] = {{"vertices", r.absorbing_path_vertices}, {"slots", r.slots}, {"descriptor", to_json(r.descriptor)}};
  stages["path_cover"] = {{"paths", r.cover_paths}, {"leftover", r.cover_leftover}};
  stages["connection"] = {{"connectors", r.connections}, {"fallback", r.connections_fallback}};
  Json absorbers = Json::array();
  for (const auto& a : r.absorbers) absorbers.push_back(to_json(a));
  stages["absorption"] = {{"leftover", r.leftover},
                          {"lattice_certified", r.lattice_certified},
                          {"absorbed_sets", r.absorbed_sets},
                          {"swaps", r.swaps},
                          {"absorbers", absorbers}};
  j["stages"] = stages;
  if (r.success()) {
    j["cycle"] = to_json(*r.cycle);
  } else {
    j["failed_stage"] = r.failed_stage;
    j["failure"] = r.failure;
  }
  return j;
}

Json to_json(const Copy& c) {
  Json j;
  j["vertices"] = to_json(c.vertices);
  Json edges = Json::array();
  for (const auto& e : c.edges) edges.push_back(to_json(e));
  j["edges"] = edges;
  return j;
}

Json witness_json(const EllCycle& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "ell_cycle";
  j["k"] = c.k;
  j["ell"] = c.ell;
  j["order"] = c.order;
  return j;
}

Json witness_json(const EllPath& p) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "ell_path";
  j["k"] = p.k;
  j["ell"] = p.ell;
  j["order"] = p.order;
  return j;
}

Witness parse_witness(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(0, std::string("witness is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ParseError(0, "witness must be a JSON object");
    if (!j.contains("schema") || j.at("schema").get<int>() != kSchemaVersion) {
      throw ParseError(0, "unsupported witness schema");
    }
    const std::string type = j.at("type").get<std::string>();
    const int k = j.at("k").get<int>();
    const int ell = j.at("ell").get<int>();
    auto order = j.at("order").get<std::vector<Vertex>>();
    if (type == "ell_cycle") return EllCycle{k, ell, std::move(order)};
    if (type == "ell_path") return EllPath{k, ell, std::move(order)};
    throw ParseError(0, "unknown witness type '" + type + "'");
  } catch (const Json::exception& e) {
    throw ParseError(0, std::string("malformed witness: ") + e.what());
  }
}

}  // namespace hyperham

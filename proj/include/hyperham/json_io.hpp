#pragma once

#include "hyperham/absorbing.hpp"
#include "hyperham/constructions.hpp"
#include "hyperham/paths.hpp"
#include "hyperham/reachability.hpp"
#include "hyperham/shadows.hpp"
#include "hyperham/tilings.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace hyperham {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const VertexSet& s);
Json to_json(const Rational& x);  // "p/q" string
Json to_json(const EllPath& p);
Json to_json(const EllCycle& c);
Json to_json(const Validation& v);
Json to_json(const Absorber& a);
Json to_json(const AbsorbDescriptor& d);
Json to_json(const PipelineReport& r);
Json to_json(const Copy& c);

// {"schema":1,"type":"ell_cycle"|"ell_path","k","ell","order"}
Json witness_json(const EllCycle& c);
Json witness_json(const EllPath& p);

using Witness = std::variant<EllCycle, EllPath>;

// Throws ParseError on a malformed document or unsupported schema.
Witness parse_witness(const std::string& text);

}  // namespace hyperham

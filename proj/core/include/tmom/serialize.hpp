#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "tmom/algebra.hpp"
#include "tmom/moments.hpp"
#include "tmom/opcheck.hpp"
#include "tmom/sos.hpp"

namespace tmom {

using Json = nlohmann::json;

// All readers throw SchemaError on malformed input.

Json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const Json& j);

Json trig_to_json(const TrigPoly& p);
TrigPoly trig_from_json(const Json& j);

Json system_to_json(const CoefficientSystem& s);
CoefficientSystem system_from_json(const Json& j);

Json dyadic_to_json(const DyadicGaussian& d);
DyadicGaussian dyadic_from_json(const Json& j);

Json gram_to_json(const GramCertificate& c);
GramCertificate gram_from_json(const Json& j);

Json feasibility_to_json(const FeasibilityReport& r);

Json moment_data_to_json(const MomentData& d);
MomentData moment_data_from_json(const Json& j);

Json measure_to_json(const Measure& mu);
Measure measure_from_json(const Json& j);

// {"kind": "laurent"|"trig", "squares": [...]}
using AnySquares = std::variant<SquareList, TrigSquareList>;
Json squares_to_json(const SquareList& s);
Json squares_to_json(const TrigSquareList& s);
AnySquares squares_from_json(const Json& j);

Json operator_tuple_to_json(const OperatorTuple& t);
OperatorTuple operator_tuple_from_json(const Json& j);

Json operator_system_to_json(const OperatorCoefficientSystem& s);
OperatorCoefficientSystem operator_system_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

// FNV-1a hash of the raw file bytes, as a hex string (for run reports).
std::string file_digest(const std::string& path);

}  // namespace tmom

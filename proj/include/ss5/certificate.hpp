#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "ss5/aux.hpp"
#include "ss5/curves.hpp"
#include "ss5/kummer.hpp"
#include "ss5/m8.hpp"

namespace ss5::cert {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All numbers are written as decimal strings.
Json field_json(const FieldCtx& F);
FieldCtx field_from_json(const Json& j);
FieldElem elem_from_json(const FieldCtx& F, const Json& j);
Json model_json(const CurveModel& C);
Json lpoly_json(const LPolynomial& L);
Json slopes_json(const NewtonPolygon& np);
Json matrix_json(const FieldCtx& F, const Matrix& M);
Json component_json(const m8::ComponentReport& c);

Json m8_payload(const m8::Certificate& c, std::uint64_t budget);
Json genus2_json(const kummer::Genus2Curve& Z);
kummer::Genus2Curve genus2_from_json(const Json& j);
Json plane_json(const FieldCtx& F, const kummer::PlaneV& V);
kummer::PlaneV plane_from_json(const FieldCtx& F, const Json& j);
Json search_result_json(const FieldCtx& F, const kummer::SearchResult& r);
Json table1_row_json(const kummer::Table1Row& row, const kummer::Table1Report& rep);
Json aux_payload(const aux::AuxCertificate& c);
Json np_payload(const aux::HeuristicReport& r);
Json dims_payload(int g, int which, const aux::ConditionDims& d);
// which is "hasse" or "bigB"
Json poly_payload(const std::string& which, std::uint32_t p);

// 64-bit FNV-1a of the compact payload dump, as 16 hex digits.
std::string payload_hash(const Json& payload);
// {schema_version, kind, payload, payload_hash, tool_version, timings, metadata}
Json envelope(const std::string& kind, const Json& payload, const Json& timings = Json::object(),
              const Json& metadata = Json::object());

// First difference between two JSON values, as "path: stored ..., recomputed ...".
std::optional<std::string> first_difference(const Json& stored, const Json& fresh, const std::string& path = "");

struct RecheckResult {
  bool ok = false;
  std::string message;
};

// Recomputes every value in the payload and compares; also re-asserts the
// invariants the payload claims.
RecheckResult recheck(const Json& env, const CountOptions& opt = {});

}  // namespace ss5::cert

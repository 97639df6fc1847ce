// JSON serialization of the report types (schema_version 1).  Keys are emitted
// in sorted order, so identical requests give byte-identical output.

#pragma once

#include "enr/existence.hpp"
#include "enr/mukai.hpp"
#include "enr/strata.hpp"
#include "enr/transforms.hpp"
#include "enr/walls.hpp"

#include <json.hpp>

namespace enr {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const Int& a);
Int int_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NSClass& x);
NSClass ns_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MukaiVector& v);
MukaiVector mukai_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DimValue& d);
DimValue dim_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CaseClassification& c);
CaseClassification classification_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExistenceReport& r);
ExistenceReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StratumType& t, const StratumDim& dim);
nlohmann::json to_json(const WallClass& w);
nlohmann::json to_json(const PsiImage& p);
nlohmann::json to_json(const BoundaryDivisor& b);

} // namespace enr

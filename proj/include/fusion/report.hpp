#pragma once

#include <string>

#include <json.hpp>

#include "fusion/ktheory.hpp"
#include "fusion/torsion.hpp"

namespace fusion {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json label_to_json(const Label& l);
Label label_from_json(const Json& j);
Json combo_to_json(const ZCombo& c);
ZCombo combo_from_json(const Json& j);
/// Integers that fit in 64 bits are numbers, larger ones decimal strings.
Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);

Json to_json(const CokernelInvariants& c);
CokernelInvariants cokernel_from_json(const Json& j);

Json to_json(const AxiomReport& r);
AxiomReport axiom_report_from_json(const Json& j);

/// {schema_version, spec, radii, k0, k1, methods, stable, note, trace, witnesses}
Json to_json(const KTheoryResult& r, const std::string& spec);
KTheoryResult ktheory_from_json(const Json& j);

Json to_json(const ExactnessReport& r, const std::string& spec);
ExactnessReport exactness_from_json(const Json& j);

Json to_json(const ModuleCandidate& c);
ModuleCandidate candidate_from_json(const Json& j);
Json to_json(const EnumerationResult& r);
EnumerationResult enumeration_from_json(const Json& j);

}  // namespace fusion

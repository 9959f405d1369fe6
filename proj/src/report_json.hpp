#pragma once

#include "pd_analysis.hpp"
#include "properties.hpp"
#include "sampling.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace lmgp {

inline constexpr const char* kSchemaVersion = "lmgp/1";

nlohmann::ordered_json to_json(const VerificationReport& rep);
nlohmann::ordered_json reports_to_json(const std::vector<VerificationReport>& reps);
nlohmann::ordered_json to_json(const PsdCertificate& cert);
nlohmann::ordered_json to_json(const ViolationWitness& w, double a, double b);
nlohmann::ordered_json spec_to_json(const FamilySpec& spec);
nlohmann::ordered_json ensemble_metadata(const PathEnsemble& e, const std::string& csv);

} // namespace lmgp

#include "report_json.hpp"

namespace lmgp {

using nlohmann::ordered_json;

ordered_json spec_to_json(const FamilySpec& spec) {
    ordered_json j;
    j["family"] = family_name(spec.family);
    switch (spec.family) {
        case Family::Wfbm:
            j["a"] = spec.a;
            j["b"] = spec.b;
            break;
        case Family::Sfbm:
        case Family::Nsfbm:
        case Family::OddBfbm:
            j["h"] = spec.h;
            break;
        case Family::Eta:
            break;
        case Family::Fbm:
            j["hurst"] = spec.hurst;
            break;
    }
    j["self_similarity_index"] = spec.self_similarity_index();
    return j;
}

ordered_json to_json(const VerificationReport& rep) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["check"] = rep.check;
    j["spec"] = rep.spec_label;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : rep.parameters) params[k] = v;
    j["parameters"] = params;
    j["defect"] = rep.defect;
    j["threshold"] = rep.threshold;
    j["pass"] = rep.pass;
    if (rep.samples) {
        j["samples"] = {{"n", rep.samples->n},
                        {"seed", rep.samples->seed},
                        {"stderr", rep.samples->stderr_est}};
    }
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

ordered_json reports_to_json(const std::vector<VerificationReport>& reps) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reps) arr.push_back(to_json(r));
    return arr;
}

ordered_json to_json(const PsdCertificate& cert) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["min_eigenvalue"] = cert.min_eigenvalue;
    j["trace"] = cert.trace;
    j["tol"] = cert.tol;
    j["pass"] = cert.pass;
    return j;
}

ordered_json to_json(const ViolationWitness& w, double a, double b) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["a"] = a;
    j["b"] = b;
    j["regime"] = regime_name(w.regime);
    j["t"] = w.t;
    j["defect"] = w.defect;
    j["certified_by"] = w.analytic_bound ? "convexity_bound" : "direct_evaluation";
    return j;
}

ordered_json ensemble_metadata(const PathEnsemble& e, const std::string& csv) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["spec"] = spec_to_json(e.spec);
    j["grid"] = e.grid.points();
    j["n"] = e.paths.rows();
    j["seed"] = e.seed;
    j["method"] = method_name(e.method);
    j["substeps"] = e.substeps;
    j["applied_jitter"] = e.applied_jitter;
    j["csv"] = csv;
    return j;
}

} // namespace lmgp

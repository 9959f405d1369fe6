#pragma once

#include "properties.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lmgp {

struct VerifyOptions {
    std::uint64_t seed = 20240901;
    std::size_t n_paths = 20000;
    int substeps = 128;
    int threads = 0;
    double tol_override = 0.0; // > 0 replaces the PSD certificate tolerance
};

// Suites: kernels | pd | sampling | properties | full. Reports are returned
// in deterministic (sorted by check name) order.
std::vector<VerificationReport> run_suite(const FamilySpec& spec,
                                          const std::string& suite,
                                          const VerifyOptions& opt = {});

bool all_pass(const std::vector<VerificationReport>& reports);

} // namespace lmgp

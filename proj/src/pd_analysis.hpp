#pragma once

#include "family.hpp"
#include "grid.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace lmgp {

// Which branch of the positive-definiteness analysis applies.
enum class Regime {
    ValidBNonpos, // -1 < b <= 0, a+b+1 >= 0
    ValidBPos,    // 0 < b <= 1, b <= 1+a
    SumNeg,       // b < 0, 1+a+b < 0: violation as t -> 0
    BGtAPlus1,    // b > a+1: violation as t -> infinity
    BGt1,         // 1 < b <= a+1: violation at t = 1+eps
    HRange,       // h (or H) outside the admissible interval
    ParamRange,   // a <= -1 or b <= -1: kernel integral diverges
};

struct ValidityVerdict {
    bool valid = false;
    Regime regime = Regime::ParamRange;
    Degeneracy degeneracy = Degeneracy::None;
    std::string describe() const;
};

// Total classifier on raw parameters (p1 = a or h or H, p2 = b).
ValidityVerdict classify(Family family, double p1, double p2 = 0.0);

struct GramMatrix {
    FamilySpec spec;
    TimeGrid grid;
    Eigen::MatrixXd entries;
};

GramMatrix gram(const FamilySpec& spec, const TimeGrid& grid);

struct PsdCertificate {
    double min_eigenvalue = 0.0;
    double trace = 0.0;
    double tol = 0.0; // relative to trace
    bool pass = false;
};

PsdCertificate psd_certificate(const Eigen::MatrixXd& m, double tol = 1e-8);
PsdCertificate psd_certificate(const GramMatrix& gm, double tol = 1e-8);

struct ViolationWitness {
    double t = 0.0;      // Q(1,t) exceeds sqrt(Q(1,1) Q(t,t))
    double defect = 0.0; // Q(1,t)^2 - Q(1,1) Q(t,t), or a certified lower bound
    Regime regime = Regime::SumNeg;
    bool analytic_bound = false; // defect from the stable convexity bound, not
                                 // from direct kernel evaluation
};

// Search for a covariance-inequality violation of an invalid wfbm parameter
// pair (a, b > -1). Sweep direction follows the regime; near the validity
// boundary the violation can be far below double-precision resolution of the
// kernel values, in which case a stabilized lower bound certifies it.
ViolationWitness violation_witness(double a, double b);

std::string regime_name(Regime r);
std::string degeneracy_name(Degeneracy d);

} // namespace lmgp

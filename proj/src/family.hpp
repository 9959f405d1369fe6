#pragma once

#include <string>

namespace lmgp {

enum class Family {
    Wfbm,    // weighted fBm, covariance int_0^{s^t} u^a [(t-u)^b + (s-u)^b] du
    Sfbm,    // sub-fractional Bm, 0 < h <= 2
    Nsfbm,   // negative sub-fractional Bm, 2 <= h <= 4
    OddBfbm, // odd-part kernel (s+t)^{h-2} - |s-t|^{h-2}, 2 < h < 4
    Eta,     // log kernel, self-similarity index 1
    Fbm,     // fractional Bm, Hurst H in (0,1)
};

enum class Degeneracy {
    None,
    B1,         // wfBm boundary b = 1 (a >= 0): time-changed-Bm integral law
    ZeroKernel, // h = 2: the (2-h) factor vanishes, zero process
    RankOne,    // h = 4: covariance 12 s^2 t^2, single Gaussian factor
};

// Validated process parameters. Construct through the factory functions;
// they reject parameters for which the kernel is not positive-definite.
struct FamilySpec {
    Family family = Family::Wfbm;
    double a = 0.0; // wfbm
    double b = 0.0; // wfbm
    double h = 0.0; // sfbm / nsfbm / odd_bfbm
    double hurst = 0.0;

    static FamilySpec wfbm(double a, double b);
    static FamilySpec sfbm(double h);
    static FamilySpec nsfbm(double h);
    static FamilySpec odd_bfbm(double h);
    static FamilySpec eta();
    static FamilySpec fbm(double hurst);

    // Index kappa with (X_{ct}) law-equal to (c^kappa X_t).
    double self_similarity_index() const;
    Degeneracy degeneracy() const;
    std::string label() const;
};

std::string family_name(Family f);

} // namespace lmgp

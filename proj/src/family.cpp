#include "family.hpp"
#include "errors.hpp"

#include <cmath>
#include <sstream>

namespace lmgp {

std::string family_name(Family f) {
    switch (f) {
        case Family::Wfbm: return "wfbm";
        case Family::Sfbm: return "sfbm";
        case Family::Nsfbm: return "nsfbm";
        case Family::OddBfbm: return "odd_bfbm";
        case Family::Eta: return "eta";
        case Family::Fbm: return "fbm";
    }
    return "?";
}

FamilySpec FamilySpec::wfbm(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("wfbm: parameters must be finite");
    if (!(a > -1.0))
        throw DomainError("wfbm: requires a > -1");
    if (!(b > -1.0 && b <= 1.0))
        throw DomainError("wfbm: requires -1 < b <= 1");
    if (!(std::fabs(b) <= 1.0 + a))
        throw DomainError("wfbm: requires |b| <= 1 + a");
    FamilySpec s;
    s.family = Family::Wfbm;
    s.a = a;
    s.b = b;
    return s;
}

FamilySpec FamilySpec::sfbm(double h) {
    // h = 2 admitted as the degenerate zero kernel.
    if (!(h > 0.0 && h <= 2.0))
        throw DomainError("sfbm: requires 0 < h <= 2");
    FamilySpec s;
    s.family = Family::Sfbm;
    s.h = h;
    return s;
}

FamilySpec FamilySpec::nsfbm(double h) {
    if (!(h >= 2.0 && h <= 4.0))
        throw DomainError("nsfbm: requires 2 <= h <= 4");
    FamilySpec s;
    s.family = Family::Nsfbm;
    s.h = h;
    return s;
}

FamilySpec FamilySpec::odd_bfbm(double h) {
    if (!(h > 2.0 && h < 4.0))
        throw DomainError("odd_bfbm: requires 2 < h < 4");
    FamilySpec s;
    s.family = Family::OddBfbm;
    s.h = h;
    return s;
}

FamilySpec FamilySpec::eta() {
    FamilySpec s;
    s.family = Family::Eta;
    return s;
}

FamilySpec FamilySpec::fbm(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw DomainError("fbm: requires 0 < H < 1");
    FamilySpec s;
    s.family = Family::Fbm;
    s.hurst = hurst;
    return s;
}

double FamilySpec::self_similarity_index() const {
    switch (family) {
        case Family::Wfbm: return 0.5 * (1.0 + a + b);
        case Family::Sfbm:
        case Family::Nsfbm: return 0.5 * h;
        case Family::OddBfbm: return 0.5 * (h - 2.0);
        case Family::Eta: return 1.0;
        case Family::Fbm: return hurst;
    }
    return 0.0;
}

Degeneracy FamilySpec::degeneracy() const {
    switch (family) {
        case Family::Wfbm:
            return b == 1.0 ? Degeneracy::B1 : Degeneracy::None;
        case Family::Sfbm:
            return h == 2.0 ? Degeneracy::ZeroKernel : Degeneracy::None;
        case Family::Nsfbm:
            if (h == 2.0) return Degeneracy::ZeroKernel;
            if (h == 4.0) return Degeneracy::RankOne;
            return Degeneracy::None;
        default:
            return Degeneracy::None;
    }
}

std::string FamilySpec::label() const {
    std::ostringstream os;
    os << family_name(family);
    switch (family) {
        case Family::Wfbm: os << "(a=" << a << ",b=" << b << ")"; break;
        case Family::Sfbm:
        case Family::Nsfbm:
        case Family::OddBfbm: os << "(h=" << h << ")"; break;
        case Family::Eta: break;
        case Family::Fbm: os << "(H=" << hurst << ")"; break;
    }
    return os.str();
}

} // namespace lmgp

#pragma once

#include <array>
#include <cstdint>

namespace lmgp {

// Counter-based generator (Philox4x32-10, Salmon et al. SC'11). A draw is
// addressed by (seed, stream, counter), so path i / draw j is independent of
// ensemble size and thread schedule.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t counter);

// Uniform in the open interval (0, 1), 53-bit resolution.
double uniform_open(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

// Standard normal quantile function (Wichura's AS 241, double precision).
double normal_icdf(double p);

// Inverse-CDF standard normal draw from the counter-based uniform stream.
double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

} // namespace lmgp

#include "entdiag/rng.hpp"

#include <cmath>
#include <numbers>

namespace entdiag::rng {

double normal(uint64_t word) {
    // Box-Muller on two decorrelated sub-words; u1 kept away from 0
    const uint64_t w1 = mix(word ^ 0x6e6f726d616c31ull);
    const uint64_t w2 = mix(word ^ 0x6e6f726d616c32ull);
    const double u1 = (static_cast<double>(w1 >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = uniform(w2);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace entdiag::rng

#include "entsim/rng.hpp"

#include <cmath>

namespace entsim {

double SplitMix64::next_normal() {
    const double u1 = 1.0 - next_double(); // (0, 1]
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t SplitMix64::next_poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 30.0) {
        // Halve until the product method is numerically safe.
        return next_poisson(0.5 * mean) + next_poisson(0.5 * mean);
    }
    const double limit = std::exp(-mean);
    std::uint64_t n = 0;
    double prod = next_double();
    while (prod > limit) {
        ++n;
        prod *= next_double();
    }
    return n;
}

} // namespace entsim

#include "ginicell/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ginicell::rng {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

Stream Stream::derive(std::uint64_t master, std::uint64_t id0,
                      std::uint64_t id1, std::uint64_t id2) {
    std::uint64_t s = mix(master + kGolden);
    s = mix(s ^ (id0 + kGolden));
    s = mix(s ^ (id1 + 2 * kGolden));
    s = mix(s ^ (id2 + 3 * kGolden));
    return Stream(s);
}

std::uint64_t Stream::next_u64() {
    state_ += kGolden;
    return mix(state_);
}

double Stream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::next_open_double() {
    // (x + 0.5) / 2^53 lies strictly inside (0,1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::exponential() {
    return -std::log(next_open_double());
}

double Stream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    for (;;) {
        const double u = 2.0 * next_double() - 1.0;
        const double v = 2.0 * next_double() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            const double m = std::sqrt(-2.0 * std::log(s) / s);
            spare_ = v * m;
            have_spare_ = true;
            return u * m;
        }
    }
}

double Stream::gamma(double shape) {
    if (!(shape >= 1.0)) throw std::domain_error("Stream::gamma: shape must be >= 1");
    const double ishape = std::floor(shape);
    if (shape == ishape && shape <= 32.0) {
        // exact: sum of `shape` unit exponentials
        double s = 0.0;
        for (int k = 0; k < static_cast<int>(ishape); ++k) s += exponential();
        return s;
    }
    // Marsaglia-Tsang squeeze, valid for shape >= 1
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_open_double();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace ginicell::rng

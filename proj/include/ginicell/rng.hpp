#ifndef GINICELL_RNG_HPP
#define GINICELL_RNG_HPP

#include <cstdint>

namespace ginicell::rng {

// splitmix64 stream. Every consumer derives its own stream from
// (master_seed, id0, id1, id2) so results are reproducible no matter how
// work is partitioned across threads. All samplers are hand-rolled on top
// of the raw 64-bit output; std::*_distribution is implementation-defined
// and would break cross-platform determinism.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    // Pure function of its arguments: stream (m, a, b, c) is the same on
    // every platform and in every run.
    static Stream derive(std::uint64_t master, std::uint64_t id0,
                         std::uint64_t id1 = 0, std::uint64_t id2 = 0);

    std::uint64_t next_u64();

    double next_double();       // uniform on [0,1)
    double next_open_double();  // uniform on (0,1)
    double exponential();       // mean 1
    double normal();            // standard normal, Marsaglia polar
    double gamma(double shape); // Gamma(shape, 1), shape >= 1

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace ginicell::rng

#endif

#ifndef GINICELL_CHANNEL_HPP
#define GINICELL_CHANNEL_HPP

#include <variant>

#include "ginicell/pointproc.hpp"
#include "ginicell/rng.hpp"

namespace ginicell::channel {

enum class FadingKind { Rayleigh, ErlangGamma };

// Channel power distribution: Gamma(shape, 1). Rayleigh is shape 1.
struct FadingModel {
    FadingKind kind = FadingKind::Rayleigh;
    int shape = 1;

    static FadingModel rayleigh() { return {FadingKind::Rayleigh, 1}; }
    static FadingModel erlang(int shape) { return {FadingKind::ErlangGamma, shape}; }

    void validate() const;
};

// Laplace transform E[exp(-s G)] = (1+s)^{-shape}.
double laplace_interference_fading(const FadingModel& f, double s);

double sample_fading(const FadingModel& f, rng::Stream& stream);

// Power-law attenuation r^{-2*beta}; beta > 1 keeps interference finite.
struct PathLoss {
    double beta = 2.0;

    void validate() const;
};

double path_loss(const PathLoss& pl, double r);

// One tier of a heterogeneous network.
struct TierConfig {
    double power = 1.0;  // transmit power, linear
    double bias = 1.0;
    int antennas = 1;
    int served_users = 1;
    PathLoss pathloss{};
    std::variant<pointproc::GinibreModel, pointproc::PoissonModel> deployment;

    // shape of the serving-link channel power, derived, never stored
    int delta() const { return antennas - served_users + 1; }

    void validate() const;
};

} // namespace ginicell::channel

#endif

#include "ginicell/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ginicell::channel {

void FadingModel::validate() const {
    if (shape < 1) throw std::domain_error("FadingModel: shape must be >= 1");
    if (kind == FadingKind::Rayleigh && shape != 1)
        throw std::domain_error("FadingModel: Rayleigh means shape 1");
}

double laplace_interference_fading(const FadingModel& f, double s) {
    f.validate();
    if (s < 0.0) throw std::domain_error("laplace_interference_fading: s must be nonnegative");
    return std::exp(-f.shape * std::log1p(s));
}

double sample_fading(const FadingModel& f, rng::Stream& stream) {
    f.validate();
    if (f.shape == 1) return stream.exponential();
    return stream.gamma(static_cast<double>(f.shape));
}

void PathLoss::validate() const {
    if (!(beta > 1.0)) throw std::domain_error("PathLoss: beta must exceed 1");
}

double path_loss(const PathLoss& pl, double r) {
    pl.validate();
    if (!(r > 0.0)) throw std::domain_error("path_loss: distance must be positive");
    return std::pow(r, -2.0 * pl.beta);
}

void TierConfig::validate() const {
    if (!(power > 0.0)) throw std::domain_error("TierConfig: power must be positive");
    if (!(bias > 0.0)) throw std::domain_error("TierConfig: bias must be positive");
    if (antennas < 1) throw std::domain_error("TierConfig: antennas must be >= 1");
    if (served_users < 1 || served_users > antennas)
        throw std::domain_error("TierConfig: served_users must lie in [1, antennas]");
    pathloss.validate();
    if (const auto* g = std::get_if<pointproc::GinibreModel>(&deployment)) g->validate();
    if (const auto* p = std::get_if<pointproc::PoissonModel>(&deployment)) {
        if (!(p->lambda > 0.0)) throw std::domain_error("TierConfig: lambda must be positive");
    }
}

} // namespace ginicell::channel

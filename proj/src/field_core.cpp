#include "vacqkd/field_core.hpp"

#include <cmath>
#include <stdexcept>

namespace vacqkd {

void DetectorParams::validate() const {
    if (!(a > 0.0)) throw std::domain_error("DetectorParams: a must be > 0");
    if (!(omega_do > 0.0)) throw std::domain_error("DetectorParams: omega_do must be > 0");
    if (!(d > 0.0)) throw std::domain_error("DetectorParams: d must be > 0");
    if (!(s > 0.0)) throw std::domain_error("DetectorParams: s must be > 0");
}

void validate_pairing(const DetectorParams& future, const DetectorParams& past) {
    future.validate();
    past.validate();
    if (future.label != ConeLabel::Future || past.label != ConeLabel::Past)
        throw PairingError("pairing: expected a (Future, Past) pair");
    if (future.a != past.a || future.omega_do != past.omega_do ||
        future.d != past.d || future.s != past.s)
        throw PairingError("pairing: envelopes must match");
    if (future.epsilon != -past.epsilon)
        throw PairingError("pairing: requires eps_F = -eps_P");
    if (future.tau != -past.tau)
        throw PairingError("pairing: requires tau_F = -tau_P");
}

BogolyubovPair bogolyubov(double omega_d, double k_s1, double omega_s, double a) {
    if (!(omega_d > 0.0) || !(a > 0.0) || !(omega_s > 0.0))
        throw std::domain_error("bogolyubov: rates must be positive");
    if (omega_s <= std::abs(k_s1))
        throw std::domain_error("bogolyubov: omega_s must exceed |k_s1|");

    const double ratio = omega_d / a;
    const double phase = 0.5 * std::log((omega_s + k_s1) / (omega_s - k_s1));
    // 1 - e^{-2 pi ratio} without cancellation for large ratio
    const double n_mag = 1.0 / std::sqrt(-std::expm1(-2.0 * pi * ratio));
    const std::complex<double> a_coef =
        std::polar(n_mag / std::sqrt(2.0 * pi * omega_s), phase * ratio);
    return {a_coef, a_coef * std::exp(-pi * ratio)};
}

std::complex<double> longitudinal_mode(double k_d1, const DetectorParams& p) {
    p.validate();
    const double dk = k_d1 - p.omega_do;
    const double env = std::pow(p.d * pi, -0.25) * std::exp(-dk * dk / (2.0 * p.d));
    return std::polar(env, p.epsilon * k_d1);
}

double transverse_mode(double k_perp_sq, const DetectorParams& p) {
    p.validate();
    if (k_perp_sq < 0.0) throw std::domain_error("transverse_mode: k_perp_sq must be >= 0");
    return std::pow(p.s * pi, -0.25) * std::exp(-k_perp_sq / (2.0 * p.s));
}

double transverse_weight_2d(double k_perp_sq, double s) {
    return std::exp(-k_perp_sq / s) / (s * pi);
}

EffectiveAmplitude effective_longitudinal(double omega_bar, double k_perp_sq,
                                          const DetectorParams& p, double K) {
    p.validate();
    if (k_perp_sq < 0.0 || omega_bar * omega_bar < k_perp_sq)
        throw std::domain_error("effective_longitudinal: requires omega_bar >= |k_perp|");

    const double disc = omega_bar * omega_bar - k_perp_sq;
    const double guard = 1e-12 * omega_bar * omega_bar;
    EffectiveAmplitude out;
    out.near_singular = disc < guard;
    const double u = std::sqrt(std::max(disc, 0.0));
    const double prefactor = omega_bar / std::sqrt(std::max(disc, guard));
    out.value = std::sqrt(K) * prefactor *
                (longitudinal_mode(u, p) + longitudinal_mode(-u, p));
    return out;
}

double unruh_temperature(double a) {
    if (!(a > 0.0)) throw std::domain_error("unruh_temperature: a must be > 0");
    return a * hbar_si / (2.0 * pi * k_boltzmann_si);
}

}  // namespace vacqkd

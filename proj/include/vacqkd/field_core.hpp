#pragma once

#include <complex>

#include "vacqkd/constants.hpp"
#include "vacqkd/errors.hpp"

namespace vacqkd {

enum class ConeLabel { Future, Past };

// Detector / local-oscillator description in conformal coordinates.
// Frequencies and rates are angular (rad/s). The width parameters d and s
// sit in the envelopes as exp(-(dk)^2 / (2 d)), so they carry rad^2/s^2.
struct DetectorParams {
    double a = 0.0;         // scaling rate
    double omega_do = 0.0;  // peak conformal frequency |k_do|
    double d = 0.0;         // longitudinal width parameter
    double s = 0.0;         // transverse width parameter
    double epsilon = 0.0;   // longitudinal phase offset, s
    double tau = 0.0;       // local-oscillator centre conformal time, s
    ConeLabel label = ConeLabel::Future;

    void validate() const;  // throws std::domain_error on non-positive rates/widths
};

// A Future/Past pair used jointly must mirror its phases (eps_F = -eps_P,
// tau_F = -tau_P) and share envelopes. Throws PairingError.
void validate_pairing(const DetectorParams& future, const DetectorParams& past);

// Mode-mixing coefficients between a conformal mode at frequency omega_d and
// the plane-wave mode (k_s1, omega_s). |b| = exp(-pi omega_d / a) |a|.
struct BogolyubovPair {
    std::complex<double> a_coef;
    std::complex<double> b_coef;
};

BogolyubovPair bogolyubov(double omega_d, double k_s1, double omega_s, double a);

// Longitudinal LO envelope (d pi)^(-1/4) exp(-(k - k_do)^2 / 2d) exp(i eps k);
// |.|^2 integrates to one over the real line.
std::complex<double> longitudinal_mode(double k_d1, const DetectorParams& p);

// Transverse envelope as a function of |k_perp|^2, single-axis prefactor
// convention: (s pi)^(-1/4) exp(-k_perp^2 / 2s).
double transverse_mode(double k_perp_sq, const DetectorParams& p);

// Plane-normalised transverse density exp(-k_perp^2/s) / (s pi); integrates
// to one against the polar measure 2 pi k dk. This is the form the
// correlation integrands use.
double transverse_weight_2d(double k_perp_sq, double s);

struct EffectiveAmplitude {
    std::complex<double> value;
    bool near_singular = false;  // prefactor denominator was clamped
};

// Folded longitudinal amplitude at (omega_bar, k_perp^2):
//   sqrt(K) * omega_bar / sqrt(omega_bar^2 - k_perp^2) * (f(u) + f(-u)),
// u = sqrt(omega_bar^2 - k_perp^2). The denominator is clamped at
// 1e-12 * omega_bar^2 and flagged; integrations use the u-substituted weight
// instead (see correlations.hpp).
EffectiveAmplitude effective_longitudinal(double omega_bar, double k_perp_sq,
                                          const DetectorParams& p, double K);

// Thermal temperature equivalent of scaling rate a: a hbar / (2 pi k_B).
double unruh_temperature(double a);

}  // namespace vacqkd

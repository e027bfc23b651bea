#pragma once

#include <vector>

#include "vacqkd/field_core.hpp"
#include "vacqkd/quadrature.hpp"

namespace vacqkd {

enum class Method { Exact, Approximate };

// Vacuum-normalised homodyne statistics of a Future/Past detector pair at one
// operating point. dx_* are the sum/difference quadrature variances at
// phases 0 and pi/2; purity_* are the conjugate-phase products (1 for a pure
// detected state).
struct CorrelationRecord {
    double omega_do = 0.0;
    double v_f = 1.0;
    double v_p = 1.0;
    double c0 = 0.0;    // cross term at phase 0 (positive: x correlated)
    double cpi2 = 0.0;  // cross term at phase pi/2 (equals -c0 under the default phases)
    double dx_minus_0 = 1.0;
    double dx_plus_0 = 1.0;
    double dx_minus_pi2 = 1.0;
    double dx_plus_pi2 = 1.0;
    double purity_minus = 1.0;
    double purity_plus = 1.0;
    bool entangled = false;
    Method method = Method::Approximate;
};

// The exact integrals run over the u-substituted domain u = k_d1,
// k = |k_perp|: with omega_bar = sqrt(u^2 + k^2) the measure becomes
//   w(u, k) = 2 pi k t(k^2) (omega_bar / u) |f(u) + f(-u)|^2,
// which cancels the boundary singularity of the (omega_bar, k_perp) form.
// Truncation: u in [max(k_do - n_sigma sqrt(d), 1e-9 u_hi), k_do + n_sigma
// sqrt(d)], k in [0, n_sigma sqrt(s)]. When k_do^2/d is O(1) the 1/u factor
// makes results logarithmically sensitive to the lower u cutoff; the cutoff
// above is part of the contract for that regime.
double mode_weight(double u, double k, const DetectorParams& p);

struct WeightDomain {
    double u_lo, u_hi, k_lo, k_hi;
};
WeightDomain weight_domain(const DetectorParams& p, const QuadratureSpec& spec);

// K such that the doubled (both longitudinal directions) u-substituted norm
// integral of the mode weight equals one.
double normalization_constant(const DetectorParams& p, const QuadratureSpec& spec);

// <coth(pi omega_bar / a)> over the normalised mode weight; >= 1.
double signal_variance_exact(const DetectorParams& p, const QuadratureSpec& spec);

// Point-envelope limit (e^{2 pi omega/a} + 1)/(e^{2 pi omega/a} - 1).
double signal_variance_approx(double omega_do, double a);

// Normalised cross term; +<csch(pi omega_bar / a)> at phi = 0 and the
// negative of that at phi = pi/2. Requires a valid pairing with
// tau_F = tau_P = 0 (the stationary phases then drop out).
double cross_correlation_exact(const DetectorParams& future, const DetectorParams& past,
                               double phi, const QuadratureSpec& spec);

// Closed forms of the strongly-peaked limit.
double dx_minus_approx(double omega_do, double a);  // (e^{pi omega/a} - 1)/(e^{pi omega/a} + 1)
double dx_plus_approx(double omega_do, double a);
double cross_approx(double omega_do, double a);     // 1/sinh(pi omega / a)

CorrelationRecord correlation_record(const DetectorParams& future, const DetectorParams& past,
                                     const QuadratureSpec& spec, Method method);
CorrelationRecord correlation_record_approx(double omega_do, double a);

// One record per grid point, overriding omega_do of the base pair.
std::vector<CorrelationRecord> fig1_sweep(const DetectorParams& future, const DetectorParams& past,
                                          const std::vector<double>& omega_grid,
                                          const QuadratureSpec& spec, Method method);

}  // namespace vacqkd

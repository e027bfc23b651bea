#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "vacqkd/correlations.hpp"

namespace vacqkd {

// 4x4 real symmetric covariance in (x_A, p_A, x_B, p_B) ordering, vacuum
// variance 1. Physicality (all symplectic eigenvalues >= 1) holds for every
// matrix assembled from model parameters; statistically estimated matrices
// may dip below and are validated only for symmetry.
struct TwoModeCovariance {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();

    static TwoModeCovariance from_matrix(const Eigen::Matrix4d& m);  // symmetry-checked
    void require_symmetric(double tol = 1e-12) const;
    bool is_physical(double tol = 1e-9) const;
};

// Diffraction channel: either a direct transmissivity or the far-field
// geometry (waist W, wavelength lambda, distance z) with
// eta = min(1, (pi W^2 / (lambda z))^2).
struct ChannelParams {
    double eta = 1.0;

    static ChannelParams from_eta(double eta);  // requires 0 < eta <= 1
    static ChannelParams from_geometry(double waist_m, double wavelength_m, double distance_m);
};

struct KeyRateResult {
    double i_ab = 0.0;    // bits per sifted symbol
    double chi_be = 0.0;  // Holevo bound, bits per sifted symbol
    double key_rate = 0.0;
    std::vector<double> nu;  // { nu1, nu2, nu3_x, nu3_p }
    double beta_rec = 1.0;
};

// (sqrt(G) - sqrt(G-1))^2, the correlation variance of an ideal two-mode
// squeezed source of gain G >= 1.
double epr_correlation(double gain);

// Source gain equivalent to vacuum detection: e^{2 pi omega/a} / (e^{2 pi omega/a} - 1).
double effective_gain(double omega_do, double a);

// eta-attenuated correlation variance: eta (sqrt(G)-sqrt(G-1))^2 + 1 - eta.
double lossy_correlation(double gain, double eta);

double rayleigh_length(double waist_m, double wavelength_m);  // pi W^2 / lambda
double rayleigh_eta(double waist_m, double wavelength_m, double distance_m);

// Reference two-mode squeezed covariance with cosh 2r = 2G - 1.
TwoModeCovariance tmsv_covariance(double gain);

// V_A on Alice's block, eta v_p + 1 - eta + excess on Bob's,
// C_x = sqrt(eta) c0 and C_p = sqrt(eta) cpi2 off-diagonal (x correlated,
// p anti-correlated). Throws UnphysicalCovarianceError if the result fails
// the symplectic check.
TwoModeCovariance cm_from_correlations(const CorrelationRecord& record,
                                       const ChannelParams& channel, double excess = 0.0);

// Independent beamsplitter loss on each mode (vacuum in the idle port).
TwoModeCovariance attenuate(const TwoModeCovariance& cm, double eta_a, double eta_b);

// (nu1, nu2) with nu1 >= nu2 from the standard two-mode invariants
// Delta = det A + det B + 2 det C and det(cm).
std::pair<double, double> symplectic_eigenvalues(const TwoModeCovariance& cm);

// g(nu) = ((nu+1)/2) log2((nu+1)/2) - ((nu-1)/2) log2((nu-1)/2); zero at and
// below nu = 1.
double gaussian_entropy(double nu);

// Asymptotic reverse-reconciliation homodyne rate against collective
// attacks: key = beta I_AB - chi_BE, with the x- and p-basis contributions
// averaged when the matrix is quadrature-asymmetric.
KeyRateResult key_rate(const TwoModeCovariance& cm, double beta_rec = 1.0);

struct KeyRatePoint {
    double z_m = 0.0;
    double eta = 1.0;
    KeyRateResult result;
};

std::vector<KeyRatePoint> fig3_sweep(const CorrelationRecord& source, double waist_m,
                                     double wavelength_m, const std::vector<double>& z_grid,
                                     double beta_rec = 1.0);
std::vector<KeyRatePoint> fig3_sweep(double omega_do, double a, double waist_m,
                                     double wavelength_m, const std::vector<double>& z_grid,
                                     double beta_rec = 1.0);

}  // namespace vacqkd

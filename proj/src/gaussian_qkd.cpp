#include "vacqkd/gaussian_qkd.hpp"

#include <cmath>
#include <stdexcept>

namespace vacqkd {

TwoModeCovariance TwoModeCovariance::from_matrix(const Eigen::Matrix4d& m) {
    TwoModeCovariance cm{m};
    cm.require_symmetric();
    return cm;
}

void TwoModeCovariance::require_symmetric(double tol) const {
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("TwoModeCovariance: matrix is not symmetric");
}

bool TwoModeCovariance::is_physical(double tol) const {
    const auto [nu1, nu2] = symplectic_eigenvalues(*this);
    return nu2 >= 1.0 - tol && nu1 >= 1.0 - tol;
}

ChannelParams ChannelParams::from_eta(double eta) {
    if (!(eta > 0.0) || eta > 1.0)
        throw std::domain_error("ChannelParams: eta must be in (0, 1]");
    return ChannelParams{eta};
}

ChannelParams ChannelParams::from_geometry(double waist_m, double wavelength_m,
                                           double distance_m) {
    return ChannelParams{rayleigh_eta(waist_m, wavelength_m, distance_m)};
}

double epr_correlation(double gain) {
    if (!(gain >= 1.0)) throw std::domain_error("epr_correlation: gain must be >= 1");
    const double root = std::sqrt(gain) + std::sqrt(gain - 1.0);
    return 1.0 / (root * root);
}

double effective_gain(double omega_do, double a) {
    if (!(omega_do > 0.0) || !(a > 0.0))
        throw std::domain_error("effective_gain: omega_do and a must be positive");
    // e^x / (e^x - 1) = 1 / (1 - e^{-x}), stable for large x
    return 1.0 / -std::expm1(-2.0 * pi * omega_do / a);
}

double lossy_correlation(double gain, double eta) {
    if (!(gain >= 1.0)) throw std::domain_error("lossy_correlation: gain must be >= 1");
    if (!(eta >= 0.0) || eta > 1.0)
        throw std::domain_error("lossy_correlation: eta must be in [0, 1]");
    return eta * epr_correlation(gain) + 1.0 - eta;
}

double rayleigh_length(double waist_m, double wavelength_m) {
    if (!(waist_m > 0.0) || !(wavelength_m > 0.0))
        throw std::domain_error("rayleigh_length: inputs must be positive");
    return pi * waist_m * waist_m / wavelength_m;
}

double rayleigh_eta(double waist_m, double wavelength_m, double distance_m) {
    if (!(distance_m > 0.0)) throw std::domain_error("rayleigh_eta: distance must be positive");
    const double ratio = rayleigh_length(waist_m, wavelength_m) / distance_m;
    // (z0/z)^2 exceeds 1 in the near field, where the far-field law no
    // longer applies; clamp there.
    return std::min(1.0, ratio * ratio);
}

TwoModeCovariance tmsv_covariance(double gain) {
    if (!(gain >= 1.0)) throw std::domain_error("tmsv_covariance: gain must be >= 1");
    const double v = 2.0 * gain - 1.0;
    const double c = 2.0 * std::sqrt(gain * (gain - 1.0));
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = v;
    m(0, 2) = m(2, 0) = c;
    m(1, 3) = m(3, 1) = -c;
    return TwoModeCovariance{m};
}

TwoModeCovariance cm_from_correlations(const CorrelationRecord& record,
                                       const ChannelParams& channel, double excess) {
    if (!(excess >= 0.0)) throw std::domain_error("cm_from_correlations: excess must be >= 0");
    if (record.v_f < 1.0 - 1e-9 || record.v_p < 1.0 - 1e-9)
        throw UnphysicalCovarianceError("cm_from_correlations: record variances below shot noise");
    const double eta = channel.eta;
    if (!(eta > 0.0) || eta > 1.0)
        throw std::domain_error("cm_from_correlations: eta must be in (0, 1]");

    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = m(1, 1) = record.v_f;
    m(2, 2) = m(3, 3) = eta * record.v_p + 1.0 - eta + excess;
    m(0, 2) = m(2, 0) = std::sqrt(eta) * record.c0;
    m(1, 3) = m(3, 1) = std::sqrt(eta) * record.cpi2;

    TwoModeCovariance cm{m};
    if (!cm.is_physical(1e-9))
        throw UnphysicalCovarianceError("cm_from_correlations: symplectic eigenvalue below 1");
    return cm;
}

TwoModeCovariance attenuate(const TwoModeCovariance& cm, double eta_a, double eta_b) {
    if (!(eta_a >= 0.0) || eta_a > 1.0 || !(eta_b >= 0.0) || eta_b > 1.0)
        throw std::domain_error("attenuate: transmissivities must be in [0, 1]");
    Eigen::Vector4d scale(std::sqrt(eta_a), std::sqrt(eta_a), std::sqrt(eta_b), std::sqrt(eta_b));
    Eigen::Matrix4d out = scale.asDiagonal() * cm.m * scale.asDiagonal();
    out(0, 0) += 1.0 - eta_a;
    out(1, 1) += 1.0 - eta_a;
    out(2, 2) += 1.0 - eta_b;
    out(3, 3) += 1.0 - eta_b;
    return TwoModeCovariance{out};
}

std::pair<double, double> symplectic_eigenvalues(const TwoModeCovariance& cm) {
    cm.require_symmetric(1e-9);
    const Eigen::Matrix4d& m = cm.m;
    const double det_a = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double det_b = m(2, 2) * m(3, 3) - m(2, 3) * m(3, 2);
    const double det_c = m(0, 2) * m(1, 3) - m(0, 3) * m(1, 2);
    const double delta = det_a + det_b + 2.0 * det_c;
    double det = m.determinant();

    const bool block_diagonal =
        m(0, 1) == 0.0 && m(0, 3) == 0.0 && m(1, 2) == 0.0 && m(2, 3) == 0.0;
    double disc;
    if (block_diagonal) {
        // Expanded form of delta^2 - 4 det for x/p-separable matrices. The
        // cross terms cancel exactly at purity, where the squared route
        // loses ~sqrt(eps) and leaks spurious Holevo information.
        const double a1 = m(0, 0), a2 = m(1, 1), b1 = m(2, 2), b2 = m(3, 3);
        const double c1 = m(0, 2), c2 = m(1, 3);
        const double prod_a = a1 * a2, prod_b = b1 * b2;
        const double diff = prod_a - prod_b;
        disc = diff * diff + 4.0 * ((c1 * c2) * (prod_a + prod_b) + (a1 * b1) * (c2 * c2) +
                                    (a2 * b2) * (c1 * c1));
        det = (a1 * b1 - c1 * c1) * (a2 * b2 - c2 * c2);
    } else {
        disc = delta * delta - 4.0 * det;
    }
    const double tol = 1e-9 * std::max(delta * delta, 1.0);
    if (disc < 0.0) {
        if (disc < -tol)
            throw std::domain_error("symplectic_eigenvalues: negative discriminant");
        disc = 0.0;
    }
    const double hi = 0.5 * (delta + std::sqrt(disc));
    // nu1^2 nu2^2 = det: recover the small eigenvalue through the product
    // instead of the cancelling difference.
    const double lo = hi > 0.0 ? std::max(det / hi, 0.0) : 0.0;
    return {std::sqrt(hi), std::sqrt(lo)};
}

double gaussian_entropy(double nu) {
    if (nu <= 1.0) return 0.0;
    const double p = 0.5 * (nu + 1.0);
    const double q = 0.5 * (nu - 1.0);
    return p * std::log2(p) - q * std::log2(q);
}

KeyRateResult key_rate(const TwoModeCovariance& cm, double beta_rec) {
    if (!(beta_rec > 0.0) || beta_rec > 1.0)
        throw std::domain_error("key_rate: beta_rec must be in (0, 1]");
    cm.require_symmetric(1e-9);
    const Eigen::Matrix4d& m = cm.m;
    const double va_x = m(0, 0), va_p = m(1, 1);
    const double vb_x = m(2, 2), vb_p = m(3, 3);
    const double c_x = m(0, 2), c_p = m(1, 3);
    if (!(va_x > 0.0) || !(va_p > 0.0) || !(vb_x > 0.0) || !(vb_p > 0.0))
        throw std::domain_error("key_rate: degenerate variances");

    const double vb_given_a_x = vb_x - c_x * c_x / va_x;
    const double vb_given_a_p = vb_p - c_p * c_p / va_p;
    if (!(vb_given_a_x > 0.0) || !(vb_given_a_p > 0.0))
        throw std::domain_error("key_rate: degenerate conditional variance");
    const double i_ab = 0.5 * (0.5 * std::log2(vb_x / vb_given_a_x) +
                               0.5 * std::log2(vb_p / vb_given_a_p));

    const auto [nu1, nu2] = symplectic_eigenvalues(cm);
    // Alice's conditional state after Bob's homodyne of the given quadrature.
    const double nu3_x_sq = va_x * (va_x - c_x * c_x / vb_x);
    const double nu3_p_sq = va_p * (va_p - c_p * c_p / vb_p);
    if (!(nu3_x_sq > 0.0) || !(nu3_p_sq > 0.0))
        throw std::domain_error("key_rate: degenerate conditional state");
    const double nu3_x = std::sqrt(nu3_x_sq);
    const double nu3_p = std::sqrt(nu3_p_sq);

    double chi = gaussian_entropy(nu1) + gaussian_entropy(nu2) -
                 0.5 * (gaussian_entropy(nu3_x) + gaussian_entropy(nu3_p));
    if (chi < 0.0) chi = 0.0;

    KeyRateResult r;
    r.i_ab = i_ab;
    r.chi_be = chi;
    r.beta_rec = beta_rec;
    r.key_rate = beta_rec * i_ab - chi;
    r.nu = {nu1, nu2, nu3_x, nu3_p};
    return r;
}

std::vector<KeyRatePoint> fig3_sweep(const CorrelationRecord& source, double waist_m,
                                     double wavelength_m, const std::vector<double>& z_grid,
                                     double beta_rec) {
    if (z_grid.empty()) throw std::invalid_argument("fig3_sweep: empty grid");
    std::vector<KeyRatePoint> out;
    out.reserve(z_grid.size());
    for (double z : z_grid) {
        KeyRatePoint point;
        point.z_m = z;
        point.eta = rayleigh_eta(waist_m, wavelength_m, z);
        point.result = key_rate(cm_from_correlations(source, ChannelParams{point.eta}), beta_rec);
        out.push_back(std::move(point));
    }
    return out;
}

std::vector<KeyRatePoint> fig3_sweep(double omega_do, double a, double waist_m,
                                     double wavelength_m, const std::vector<double>& z_grid,
                                     double beta_rec) {
    return fig3_sweep(correlation_record_approx(omega_do, a), waist_m, wavelength_m, z_grid,
                      beta_rec);
}

}  // namespace vacqkd

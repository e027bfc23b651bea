#include "vacqkd/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vacqkd {

namespace {

void require_positive(double omega_do, double a) {
    if (!(omega_do > 0.0) || !(a > 0.0))
        throw std::domain_error("correlations: omega_do and a must be positive");
}

// Normalised expectation values of the thermal kernels over the mode weight.
struct ExactMoments {
    double v;        // <coth(pi omega_bar / a)>
    double c;        // <csch(pi omega_bar / a)>
    double s_minus;  // <tanh(pi omega_bar / 2a)>  (= v - c, evaluated directly)
    double s_plus;   // <coth(pi omega_bar / 2a)>  (= v + c)
};

ExactMoments exact_moments(const DetectorParams& p, const QuadratureSpec& spec) {
    p.validate();
    spec.validate();
    const WeightDomain dom = weight_domain(p, spec);
    auto run = [&](auto kernel) {
        return integrate_2d(
                   [&](double u, double k) { return mode_weight(u, k, p) * kernel(std::hypot(u, k)); },
                   dom.u_lo, dom.u_hi, dom.k_lo, dom.k_hi, spec.rel_tol, spec.max_evals)
            .value;
    };
    const double norm = run([](double) { return 1.0; });
    const double inv_a = pi / p.a;
    ExactMoments m;
    m.v = run([&](double ob) { return 1.0 / std::tanh(inv_a * ob); }) / norm;
    m.c = run([&](double ob) { return 1.0 / std::sinh(inv_a * ob); }) / norm;
    // The half-angle kernels avoid the cancellation of v - c at small
    // omega_bar / a, where both moments are large and nearly equal.
    m.s_minus = run([&](double ob) { return std::tanh(0.5 * inv_a * ob); }) / norm;
    m.s_plus = run([&](double ob) { return 1.0 / std::tanh(0.5 * inv_a * ob); }) / norm;
    return m;
}

CorrelationRecord assemble(double omega_do, double v, double c,
                           double s_minus, double s_plus, Method method) {
    CorrelationRecord r;
    r.omega_do = omega_do;
    r.method = method;
    r.v_f = r.v_p = v;
    r.c0 = c;
    r.cpi2 = -c;
    r.dx_minus_0 = s_minus;
    r.dx_plus_pi2 = s_minus;
    r.dx_plus_0 = s_plus;
    r.dx_minus_pi2 = s_plus;
    r.purity_minus = s_minus * s_plus;
    r.purity_plus = s_plus * s_minus;
    r.entangled = r.dx_minus_0 * r.dx_plus_pi2 < 1.0;
    return r;
}

}  // namespace

double mode_weight(double u, double k, const DetectorParams& p) {
    const double env_a = std::exp(-(u - p.omega_do) * (u - p.omega_do) / (2.0 * p.d));
    const double env_b = std::exp(-(u + p.omega_do) * (u + p.omega_do) / (2.0 * p.d));
    const double fsum_sq = (env_a * env_a + env_b * env_b +
                            2.0 * env_a * env_b * std::cos(2.0 * p.epsilon * u)) /
                           std::sqrt(p.d * pi);
    const double omega_bar = std::hypot(u, k);
    return 2.0 * pi * k * transverse_weight_2d(k * k, p.s) * (omega_bar / u) * fsum_sq;
}

WeightDomain weight_domain(const DetectorParams& p, const QuadratureSpec& spec) {
    const double sd = std::sqrt(p.d);
    const double ss = std::sqrt(p.s);
    WeightDomain dom;
    dom.u_hi = p.omega_do + spec.n_sigma * sd;
    dom.u_lo = std::max(p.omega_do - spec.n_sigma * sd, 1e-9 * dom.u_hi);
    dom.k_lo = 0.0;
    dom.k_hi = spec.n_sigma * ss;
    return dom;
}

double normalization_constant(const DetectorParams& p, const QuadratureSpec& spec) {
    p.validate();
    spec.validate();
    const WeightDomain dom = weight_domain(p, spec);
    const IntegralResult half = integrate_2d(
        [&](double u, double k) { return mode_weight(u, k, p); },
        dom.u_lo, dom.u_hi, dom.k_lo, dom.k_hi, spec.rel_tol, spec.max_evals);
    // Both longitudinal directions contribute: the full-line norm is twice
    // the half-line integral of the folded weight.
    return 1.0 / (2.0 * half.value);
}

double signal_variance_exact(const DetectorParams& p, const QuadratureSpec& spec) {
    return exact_moments(p, spec).v;
}

double signal_variance_approx(double omega_do, double a) {
    require_positive(omega_do, a);
    return 1.0 / std::tanh(pi * omega_do / a);
}

double cross_correlation_exact(const DetectorParams& future, const DetectorParams& past,
                               double phi, const QuadratureSpec& spec) {
    validate_pairing(future, past);
    if (future.tau != 0.0 || past.tau != 0.0)
        throw PairingError("cross_correlation_exact: nonzero tau offsets are not supported");
    double sign;
    if (phi == 0.0)
        sign = 1.0;
    else if (std::abs(phi - pi / 2.0) < 1e-12)
        sign = -1.0;
    else
        throw std::invalid_argument("cross_correlation_exact: phi must be 0 or pi/2");
    return sign * exact_moments(future, spec).c;
}

double dx_minus_approx(double omega_do, double a) {
    require_positive(omega_do, a);
    return std::tanh(pi * omega_do / (2.0 * a));
}

double dx_plus_approx(double omega_do, double a) {
    require_positive(omega_do, a);
    return 1.0 / std::tanh(pi * omega_do / (2.0 * a));
}

double cross_approx(double omega_do, double a) {
    require_positive(omega_do, a);
    return 1.0 / std::sinh(pi * omega_do / a);
}

CorrelationRecord correlation_record(const DetectorParams& future, const DetectorParams& past,
                                     const QuadratureSpec& spec, Method method) {
    validate_pairing(future, past);
    if (method == Method::Approximate)
        return correlation_record_approx(future.omega_do, future.a);
    if (future.tau != 0.0 || past.tau != 0.0)
        throw PairingError("correlation_record: nonzero tau offsets are not supported");
    const ExactMoments m = exact_moments(future, spec);
    return assemble(future.omega_do, m.v, m.c, m.s_minus, m.s_plus, Method::Exact);
}

CorrelationRecord correlation_record_approx(double omega_do, double a) {
    require_positive(omega_do, a);
    return assemble(omega_do, signal_variance_approx(omega_do, a), cross_approx(omega_do, a),
                    dx_minus_approx(omega_do, a), dx_plus_approx(omega_do, a),
                    Method::Approximate);
}

std::vector<CorrelationRecord> fig1_sweep(const DetectorParams& future, const DetectorParams& past,
                                          const std::vector<double>& omega_grid,
                                          const QuadratureSpec& spec, Method method) {
    if (omega_grid.empty()) throw std::invalid_argument("fig1_sweep: empty grid");
    std::vector<CorrelationRecord> out;
    out.reserve(omega_grid.size());
    for (double omega : omega_grid) {
        DetectorParams f = future;
        DetectorParams p = past;
        f.omega_do = p.omega_do = omega;
        out.push_back(correlation_record(f, p, spec, method));
    }
    return out;
}

}  // namespace vacqkd

#include "vacqkd/labframe.hpp"

#include <cmath>
#include <stdexcept>

namespace vacqkd {

namespace {

// Reference initial frequencies (rad/s) behind the default tau_o rows.
constexpr double kReferenceOmegaI[3] = {9.40e15, 7.48e12, 7.48e10};

}  // namespace

double default_scan_log_ratio() {
    // ln(9.40e15 / 6.28e14): scan depth of the top reference row.
    return std::log(kReferenceOmegaI[0] / 6.28e14);
}

double lab_interval(double tau_o, double delta_tau, double a) {
    if (!(a > 0.0)) throw std::domain_error("lab_interval: a must be > 0");
    return std::exp(a * tau_o) / a * std::expm1(a * delta_tau);
}

double frequency_ratio(double a, double delta_tau_total) {
    if (!(a > 0.0) || !(delta_tau_total >= 0.0))
        throw std::domain_error("frequency_ratio: inputs must be positive");
    return std::exp(-a * delta_tau_total);
}

double chirp_frequency(double omega_do, double a, double tau_o, double delta_t) {
    if (!(omega_do > 0.0) || !(a > 0.0))
        throw std::domain_error("chirp_frequency: omega_do and a must be positive");
    return omega_do / (std::exp(a * tau_o) + a * delta_t);
}

double thermal_occupancy(double omega, double temperature) {
    if (!(omega > 0.0)) throw std::domain_error("thermal_occupancy: omega must be > 0");
    if (temperature <= 0.0) return 0.0;
    return 1.0 / std::expm1(hbar_si * omega / (k_boltzmann_si * temperature));
}

ChirpSchedule chirp_profile(double omega_do, double a, double tau_o,
                            const std::vector<double>& delta_t_grid, ConeLabel label,
                            double temperature, double scan_log_ratio) {
    if (!(omega_do > 0.0) || !(a > 0.0))
        throw std::domain_error("chirp_profile: omega_do and a must be positive");
    if (!(scan_log_ratio > 0.0))
        throw std::domain_error("chirp_profile: scan_log_ratio must be positive");

    ChirpSchedule sched;
    sched.tau_o = tau_o;
    sched.a = a;
    sched.omega_do = omega_do;
    sched.label = label;
    sched.omega_i = omega_do * std::exp(-a * tau_o);
    sched.omega_f = sched.omega_i * std::exp(-scan_log_ratio);
    sched.delta_t = 2.0 * pi / sched.omega_f;
    sched.occupancy = thermal_occupancy(sched.omega_f, temperature);

    const double t_scan = lab_interval(tau_o, scan_log_ratio / a, a);
    std::vector<double> grid = delta_t_grid;
    if (grid.empty()) {
        grid.resize(33);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = t_scan * static_cast<double>(i) / (grid.size() - 1);
    }
    sched.samples.reserve(grid.size());
    for (double dt : grid) {
        if (dt < 0.0 || dt > t_scan * (1.0 + 1e-9))
            throw std::invalid_argument("chirp_profile: grid point outside the scan window");
        // The Past detector runs the mirror-image sweep, rising in frequency.
        const double t_eff = label == ConeLabel::Future ? dt : t_scan - dt;
        sched.samples.push_back({dt, chirp_frequency(omega_do, a, tau_o, t_eff)});
    }
    return sched;
}

std::vector<ChirpSchedule> table1(double a, double omega_do, const std::vector<double>& tau_rows,
                                  const std::vector<double>& temperatures) {
    if (tau_rows.empty()) throw std::invalid_argument("table1: no rows");
    if (!temperatures.empty() && temperatures.size() != 1 &&
        temperatures.size() != tau_rows.size())
        throw std::invalid_argument("table1: temperatures must broadcast or match rows");

    std::vector<ChirpSchedule> out;
    out.reserve(tau_rows.size());
    for (std::size_t i = 0; i < tau_rows.size(); ++i) {
        double temp = 300.0;
        if (temperatures.size() == 1)
            temp = temperatures[0];
        else if (!temperatures.empty())
            temp = temperatures[i];
        out.push_back(chirp_profile(omega_do, a, tau_rows[i], {}, ConeLabel::Future, temp));
    }
    return out;
}

std::vector<double> table1_default_tau(double a, double omega_do) {
    if (!(a > 0.0) || !(omega_do > 0.0))
        throw std::domain_error("table1_default_tau: inputs must be positive");
    std::vector<double> rows;
    rows.reserve(3);
    for (double omega_i : kReferenceOmegaI) rows.push_back(-std::log(omega_i / omega_do) / a);
    return rows;
}

std::vector<double> table1_default_temperatures() { return {300.0, 3.0, 1e-3}; }

}  // namespace vacqkd

#pragma once

#include <vector>

#include "vacqkd/field_core.hpp"

namespace vacqkd {

// Default scan depth ln(omega_i / omega_f) for tabulated schedules,
// dimensionless once multiplied out as a * delta_tau.
double default_scan_log_ratio();

struct ChirpSample {
    double delta_t = 0.0;  // elapsed lab time, s
    double omega = 0.0;    // instantaneous frequency, rad/s
};

// Lab-frame recipe for one detector / local oscillator: frequency sweep
// omega_i -> omega_f over the scan window, plus the thermal occupancy of the
// final frequency at the associated background temperature.
//
// delta_t is the tabulated scan duration, reported as the final-frequency
// period 2 pi / omega_f; the exponential ramp between omega_i and omega_f
// itself spans the shorter interval lab_interval(tau_o, delta_tau_T, a),
// which bounds the sample grid.
struct ChirpSchedule {
    double tau_o = 0.0;
    double omega_i = 0.0;
    double omega_f = 0.0;
    double delta_t = 0.0;
    double a = 0.0;
    double omega_do = 0.0;
    std::vector<ChirpSample> samples;
    double occupancy = 0.0;  // nbar(omega_f, T)
    ConeLabel label = ConeLabel::Future;
};

// Lab time elapsed over conformal interval delta_tau starting at tau_o:
// (e^{a tau_o} / a)(e^{a delta_tau} - 1).
double lab_interval(double tau_o, double delta_tau, double a);

// omega_f / omega_i = e^{-a delta_tau_total}.
double frequency_ratio(double a, double delta_tau_total);

// omega(delta_t) = omega_do / (e^{a tau_o} + a delta_t).
double chirp_frequency(double omega_do, double a, double tau_o, double delta_t);

// Bose occupancy 1 / (e^{hbar omega / k_B T} - 1); zero for T <= 0.
double thermal_occupancy(double omega, double temperature);

// Builds the schedule for one detector. delta_t_grid must lie inside the
// scan window [0, lab_interval(tau_o, scan_log_ratio / a, a)]; an empty grid
// selects a uniform default. Past schedules mirror the Future sweep in time,
// so their samples rise in frequency.
ChirpSchedule chirp_profile(double omega_do, double a, double tau_o,
                            const std::vector<double>& delta_t_grid,
                            ConeLabel label = ConeLabel::Future, double temperature = 300.0,
                            double scan_log_ratio = default_scan_log_ratio());

// One schedule per tau_o row. temperatures must be empty (300 K everywhere),
// a single broadcast value, or one per row.
std::vector<ChirpSchedule> table1(double a, double omega_do, const std::vector<double>& tau_rows,
                                  const std::vector<double>& temperatures = {});

// Default rows: tau_o values whose initial frequencies hit the reference
// operating points {9.40e15, 7.48e12, 7.48e10} rad/s at a = 14e9,
// omega_do = 10e9 (scaled accordingly for other inputs).
std::vector<double> table1_default_tau(double a = 14e9, double omega_do = 10e9);
std::vector<double> table1_default_temperatures();  // {300, 3, 1e-3} K

}  // namespace vacqkd

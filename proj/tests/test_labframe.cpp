#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "vacqkd/labframe.hpp"

using namespace vacqkd;

TEST_CASE("lab interval") {
    CHECK(lab_interval(-0.5e-9, 0.0, 14e9) == doctest::Approx(0.0));

    // first order: delta_t ~ e^{a tau_o} delta_tau
    const double tau_o = -0.5e-9, a = 14e9, dtau = 1e-15;
    CHECK(lab_interval(tau_o, dtau, a) ==
          doctest::Approx(std::exp(a * tau_o) * dtau).epsilon(1e-5));

    CHECK_THROWS_AS(lab_interval(0.0, 1e-10, 0.0), std::domain_error);
}

TEST_CASE("frequency ratio") {
    CHECK(frequency_ratio(14e9, 0.0) == doctest::Approx(1.0));
    const double dtau = 1.93280343e-10;
    CHECK(frequency_ratio(14e9, dtau) * std::exp(14e9 * dtau) == doctest::Approx(1.0).epsilon(1e-14));

    // inverting the reference frequency ratio recovers the pinned scan time
    const double ratio = 6.28e14 / 9.40e15;
    CHECK(std::log(1.0 / ratio) / 14e9 ==
          doctest::Approx(oracle::kScanLogRatio / 14e9).epsilon(1e-12));
    CHECK(default_scan_log_ratio() == doctest::Approx(oracle::kScanLogRatio).epsilon(1e-14));
}

TEST_CASE("chirp frequency") {
    const double omega = 10e9, a = 14e9, tau_o = -0.5e-9;
    CHECK(chirp_frequency(omega, a, tau_o, 0.0) ==
          doctest::Approx(omega * std::exp(-a * tau_o)).epsilon(1e-12));

    // d omega / d dt = -a omega^2 / omega_do
    const double dt = 2e-11, h = 1e-17;
    const double w = chirp_frequency(omega, a, tau_o, dt);
    const double deriv = (chirp_frequency(omega, a, tau_o, dt + h) -
                          chirp_frequency(omega, a, tau_o, dt - h)) /
                         (2.0 * h);
    CHECK(deriv == doctest::Approx(-a * w * w / omega).epsilon(1e-6));

    // consistency of the interval, ratio and sweep relations
    for (double dtau : {1e-11, 5e-11, 1.5e-10}) {
        const double t = lab_interval(tau_o, dtau, a);
        CHECK(chirp_frequency(omega, a, tau_o, t) ==
              doctest::Approx(omega * std::exp(-a * (tau_o + dtau))).epsilon(1e-9));
    }
}

TEST_CASE("chirp profile shape and mirroring") {
    const double omega = 10e9, a = 14e9, tau_o = -0.47267164e-9;
    const ChirpSchedule fut = chirp_profile(omega, a, tau_o, {}, ConeLabel::Future, 3.0);
    CHECK(fut.omega_i == doctest::Approx(omega * std::exp(-a * tau_o)).epsilon(1e-12));
    CHECK(fut.omega_f == doctest::Approx(fut.omega_i * std::exp(-default_scan_log_ratio())));
    CHECK(fut.delta_t == doctest::Approx(2.0 * pi / fut.omega_f).epsilon(1e-14));
    CHECK(fut.samples.front().omega == doctest::Approx(fut.omega_i).epsilon(1e-12));
    CHECK(fut.samples.back().omega == doctest::Approx(fut.omega_f).epsilon(1e-9));
    for (std::size_t i = 1; i < fut.samples.size(); ++i)
        CHECK(fut.samples[i].omega < fut.samples[i - 1].omega);

    const ChirpSchedule past = chirp_profile(omega, a, tau_o, {}, ConeLabel::Past, 3.0);
    for (std::size_t i = 1; i < past.samples.size(); ++i)
        CHECK(past.samples[i].omega > past.samples[i - 1].omega);
    const std::size_t n = fut.samples.size();
    for (std::size_t i = 0; i < n; ++i)
        CHECK(fut.samples[i].omega ==
              doctest::Approx(past.samples[n - 1 - i].omega).epsilon(1e-12));

    CHECK_THROWS_AS(chirp_profile(omega, a, tau_o, {1.0}, ConeLabel::Future),
                    std::invalid_argument);
}

TEST_CASE("default rows reproduce the reference table") {
    const auto rows = table1(14e9, 10e9, table1_default_tau(), table1_default_temperatures());
    REQUIRE(rows.size() == 3);

    const double ref_wi[3] = {9.40e15, 7.48e12, 7.48e10};
    const double ref_wf[3] = {6.28e14, 5.0e11, 5.0e9};
    const double ref_dt[3] = {10e-15, 12.6e-12, 1.26e-9};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(rows[i].omega_i - ref_wi[i]) / ref_wi[i] < 0.05);
        CHECK(std::abs(rows[i].omega_f - ref_wf[i]) / ref_wf[i] < 0.05);
        CHECK(std::abs(rows[i].delta_t - ref_dt[i]) / ref_dt[i] < 0.05);
    }
    CHECK(rows[0].occupancy == doctest::Approx(oracle::kOccupancyRow1).epsilon(1e-6));
    CHECK(rows[0].occupancy == doctest::Approx(1.2e-7).epsilon(0.10));
    CHECK(rows[2].occupancy < 1e-12);

    // the frequency ratio is a row-independent constant
    for (int i = 1; i < 3; ++i)
        CHECK(rows[i].omega_f / rows[i].omega_i ==
              doctest::Approx(rows[0].omega_f / rows[0].omega_i).epsilon(1e-12));
}

TEST_CASE("zero initial conformal time starts at the peak frequency") {
    const auto rows = table1(14e9, 10e9, {0.0});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].omega_i == doctest::Approx(10e9).epsilon(1e-14));
}

TEST_CASE("thermal occupancy") {
    CHECK(thermal_occupancy(6.28e14, 300.0) ==
          doctest::Approx(oracle::kOccupancyRow1).epsilon(1e-6));
    CHECK(thermal_occupancy(6.28e14, -1.0) == 0.0);
    CHECK_THROWS_AS(thermal_occupancy(0.0, 300.0), std::domain_error);
}

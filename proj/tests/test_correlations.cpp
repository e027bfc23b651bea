#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "vacqkd/correlations.hpp"

using namespace vacqkd;

namespace {

std::pair<DetectorParams, DetectorParams> pair_with(double omega, double a, double d, double s) {
    DetectorParams f;
    f.a = a;
    f.omega_do = omega;
    f.d = d;
    f.s = s;
    f.label = ConeLabel::Future;
    DetectorParams p = f;
    p.label = ConeLabel::Past;
    return {f, p};
}

double norm_integral(const DetectorParams& p, const QuadratureSpec& spec) {
    const WeightDomain dom = weight_domain(p, spec);
    return integrate_2d([&](double u, double k) { return mode_weight(u, k, p); },
                        dom.u_lo, dom.u_hi, dom.k_lo, dom.k_hi, spec.rel_tol, spec.max_evals)
        .value;
}

}  // namespace

TEST_CASE("closed forms at the reference points") {
    CHECK(signal_variance_approx(10e9, 14e9) == doctest::Approx(oracle::kVs4_10_14).epsilon(1e-12));
    CHECK(dx_minus_approx(10e9, 14e9) == doctest::Approx(oracle::kDxMinus_10_14).epsilon(1e-12));
    CHECK(cross_approx(10e9, 14e9) == doctest::Approx(oracle::kCross_10_14).epsilon(1e-12));
    CHECK(signal_variance_approx(40e9, 60e9) == doctest::Approx(oracle::kVs4_40_60).epsilon(1e-12));

    // a -> 0 freezes the detector into the vacuum
    CHECK(signal_variance_approx(10e9, 1e7) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("approximate record at (10e9, 14e9)") {
    const CorrelationRecord r = correlation_record_approx(10e9, 14e9);
    CHECK(r.dx_minus_0 == doctest::Approx(oracle::kDxMinus_10_14).epsilon(1e-12));
    CHECK(r.dx_minus_0 == doctest::Approx(0.8083).epsilon(2e-4));
    CHECK(r.dx_plus_pi2 == doctest::Approx(r.dx_minus_0).epsilon(1e-14));
    CHECK(r.purity_minus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.purity_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.entangled);
    CHECK(r.cpi2 == doctest::Approx(-r.c0).epsilon(1e-14));
}

TEST_CASE("approximate purity and entanglement hold across scales") {
    for (double omega : {1e5, 1e7, 1e9, 1e10, 1e11}) {
        for (double a : {14e9, 60e9, 1e12}) {
            const CorrelationRecord r = correlation_record_approx(omega, a);
            CHECK(r.purity_minus == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(r.dx_minus_0 * r.dx_plus_pi2 < 1.0);
            CHECK(r.entangled);
            CHECK(r.v_f >= 1.0);
        }
    }

    // far outside the operating range the squeezing saturates to shot noise
    // in double precision and the strict witness goes inconclusive
    const CorrelationRecord saturated = correlation_record_approx(1e11, 1e9);
    CHECK(saturated.dx_minus_0 == 1.0);
    CHECK(!saturated.entangled);
}

TEST_CASE("approximate squeezing grows with frequency") {
    double prev = 0.0;
    for (double omega = 1e9; omega < 60e9; omega += 2e9) {
        const double val = dx_minus_approx(omega, 14e9);
        CHECK(val > prev);
        prev = val;
    }
}

TEST_CASE("normalization constant behaviour") {
    QuadratureSpec spec;
    auto [f, p] = pair_with(10e9, 14e9, 5.0e9, 0.5e9);

    // self-consistency: re-integrating the weight against K gives one
    const double k_const = normalization_constant(f, spec);
    const double half = norm_integral(f, spec);
    CHECK(2.0 * k_const * half == doctest::Approx(1.0).epsilon(1e-8));

    // shrinking the transverse width drives K to 1/2
    double prev_gap = 1.0;
    for (double s : {0.5e9, 1e7, 1e5}) {
        DetectorParams narrow = f;
        narrow.s = s;
        const double gap = std::abs(normalization_constant(narrow, spec) - 0.5);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-6);

    // a constant rescale of the envelope is absorbed: K(c f) c^2 = K(f)
    const double scale = 2.0;
    const WeightDomain dom = weight_domain(f, spec);
    const double scaled = integrate_2d(
                              [&](double u, double k) {
                                  return scale * scale * mode_weight(u, k, f);
                              },
                              dom.u_lo, dom.u_hi, dom.k_lo, dom.k_hi, spec.rel_tol, spec.max_evals)
                              .value;
    CHECK(1.0 / (2.0 * scaled) * scale * scale == doctest::Approx(k_const).epsilon(1e-10));
}

TEST_CASE("exact variance: deep-suppression limit returns shot noise") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    auto [f, p] = pair_with(10e9, 1e9, 5.0e9, 0.5e9);  // 2 pi omega / a >= 50 on the domain
    CHECK(signal_variance_exact(f, spec) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("exact variance matches the closed form at narrow envelopes") {
    QuadratureSpec spec;
    auto [f, p] = pair_with(40e9, 60e9, 2.0e9, 0.25e9);
    const double exact = signal_variance_exact(f, spec);
    CHECK(exact == doctest::Approx(oracle::kVs4_40_60).epsilon(1e-7));
    CHECK(std::abs(exact - oracle::kVs4_40_60) / oracle::kVs4_40_60 < 0.02);
    CHECK(exact == doctest::Approx(1.0308).epsilon(2e-2));
}

TEST_CASE("narrowing the envelopes converges to the closed form") {
    QuadratureSpec spec;
    const double omega = 1e6, a = 14e9;
    const double closed = signal_variance_approx(omega, a);
    double prev = 1e300;
    for (double shrink : {1.0, 100.0, 10000.0}) {
        auto [f, p] = pair_with(omega, a, 5.0e9 / shrink, 0.5e9 / shrink);
        const double gap = std::abs(signal_variance_exact(f, spec) - closed);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("exact cross-correlation") {
    QuadratureSpec spec;

    // kernel collapses when the thermal weight vanishes
    auto [fcold, pcold] = pair_with(10e9, 1e9, 5.0e9, 0.5e9);
    CHECK(std::abs(cross_correlation_exact(fcold, pcold, 0.0, spec)) < 1e-9);

    // narrow-envelope agreement with the closed forms
    auto [f, p] = pair_with(40e9, 60e9, 2.0e9, 0.25e9);
    const double c0 = cross_correlation_exact(f, p, 0.0, spec);
    const double v = signal_variance_exact(f, spec);
    CHECK(std::abs((v - c0) - oracle::kDxMinus_40_60) / oracle::kDxMinus_40_60 < 0.02);

    // phase pi/2 flips the sign
    CHECK(cross_correlation_exact(f, p, pi / 2.0, spec) == doctest::Approx(-c0).epsilon(1e-12));

    // pairing violations and unsupported offsets
    DetectorParams broken = p;
    broken.epsilon = 1e-12;
    CHECK_THROWS_AS(cross_correlation_exact(f, broken, 0.0, spec), PairingError);
    DetectorParams shifted_f = f, shifted_p = p;
    shifted_f.tau = 1e-10;
    shifted_p.tau = -1e-10;
    CHECK_THROWS_AS(cross_correlation_exact(shifted_f, shifted_p, 0.0, spec), PairingError);
    CHECK_THROWS_AS(cross_correlation_exact(f, p, 0.3, spec), std::invalid_argument);
}

TEST_CASE("exact record: pure at narrow envelopes, impure when smeared") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-7;

    auto [f, p] = pair_with(10e9, 14e9, 5.0e9, 0.5e9);
    const CorrelationRecord narrow = correlation_record(f, p, spec, Method::Exact);
    CHECK(narrow.method == Method::Exact);
    CHECK(narrow.purity_minus == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(narrow.dx_minus_0 == doctest::Approx(oracle::kDxMinus_10_14).epsilon(1e-5));
    CHECK(narrow.entangled);
    CHECK(narrow.v_f >= 1.0);

    // low peak frequency smears the thermal kernels across the envelope
    auto [fs, ps] = pair_with(2.0e5, 14e9, 5.0e9, 0.5e9);
    const CorrelationRecord smeared = correlation_record(fs, ps, spec, Method::Exact);
    CHECK(smeared.purity_minus > 1.05);
    CHECK(smeared.entangled);
    CHECK(smeared.v_f > 1.0);
    // |C| <= sqrt(V_F V_P) - the impure record still assembles into a state
    CHECK(smeared.c0 < std::sqrt(smeared.v_f * smeared.v_p));
}

TEST_CASE("exact record with underflowed cross term is separable") {
    QuadratureSpec spec;
    auto [f, p] = pair_with(10e9, 0.1e9, 5.0e9, 0.5e9);  // pi omega / a ~ 314
    const CorrelationRecord r = correlation_record(f, p, spec, Method::Exact);
    CHECK(r.c0 == doctest::Approx(0.0));
    CHECK(r.dx_minus_0 == doctest::Approx(r.v_f).epsilon(1e-9));
    CHECK(!(r.dx_minus_0 * r.dx_plus_pi2 < 1.0) == !r.entangled);
}

TEST_CASE("budget errors propagate out of the exact integrals") {
    QuadratureSpec starved;
    starved.rel_tol = 1e-13;
    starved.max_evals = 400;
    auto [f, p] = pair_with(10e9, 14e9, 5.0e9, 0.5e9);
    try {
        signal_variance_exact(f, starved);
        FAIL("expected QuadratureBudgetError");
    } catch (const QuadratureBudgetError& e) {
        CHECK(e.error_bound() > 0.0);
        CHECK(e.evals() <= starved.max_evals + 30);
    }
}

TEST_CASE("fig1 sweep") {
    QuadratureSpec spec;
    auto [f, p] = pair_with(10e9, 14e9, 5.0e9, 0.5e9);

    const auto single = fig1_sweep(f, p, {10e9}, spec, Method::Approximate);
    REQUIRE(single.size() == 1);
    CHECK(single[0].dx_minus_0 ==
          doctest::Approx(correlation_record(f, p, spec, Method::Approximate).dx_minus_0));

    const auto sweep = fig1_sweep(f, p, {5e9, 10e9, 20e9, 40e9}, spec, Method::Exact);
    REQUIRE(sweep.size() == 4);
    for (std::size_t i = 0; i + 1 < sweep.size(); ++i)
        CHECK(sweep[i].dx_minus_0 < sweep[i + 1].dx_minus_0);

    CHECK_THROWS_AS(fig1_sweep(f, p, {}, spec, Method::Exact), std::invalid_argument);
}

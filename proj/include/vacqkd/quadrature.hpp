#pragma once

#include <cstddef>
#include <functional>

#include "vacqkd/errors.hpp"

namespace vacqkd {

// Controls shared by all adaptive integrations.
struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    double n_sigma = 8.0;             // Gaussian-tail truncation radius, in envelope widths
    std::size_t max_evals = 20000000; // total integrand-evaluation budget

    void validate() const;  // rel_tol > 0, n_sigma >= 4
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
    std::size_t evals = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f on [lo, hi]. The worst
// panel is bisected until the summed error estimate meets
// max(abs_tol, rel_tol * |value|). Exceeding max_evals throws
// QuadratureBudgetError carrying the running estimate; the engine is
// reentrant and keeps no global state.
IntegralResult integrate(const std::function<double(double)>& f, double lo, double hi,
                         double rel_tol, double abs_tol, std::size_t max_evals);

// Nested 2-D integration of f(u, k) over [u_lo, u_hi] x [k_lo, k_hi]:
// adaptive in k outside, adaptive in u inside, the inner pass one decade
// tighter. The evaluation budget is shared across both levels.
IntegralResult integrate_2d(const std::function<double(double, double)>& f,
                            double u_lo, double u_hi, double k_lo, double k_hi,
                            double rel_tol, std::size_t max_evals);

}  // namespace vacqkd

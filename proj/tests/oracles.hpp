#pragma once

// Test-only reference values and helpers, kept independent of the library's
// integration path.

#include <cmath>
#include <cstddef>
#include <functional>

namespace oracle {

// Composite Simpson rule on a uniform grid; n must be even.
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      std::size_t n = 4000) {
    if (n % 2) ++n;
    const double h = (hi - lo) / static_cast<double>(n);
    double acc = f(lo) + f(hi);
    for (std::size_t i = 1; i < n; ++i) acc += f(lo + h * i) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Frozen closed-form values (30-digit arithmetic, rounded to double).
inline constexpr double kVs4_10_14 = 1.022742146177048;       // (e^x+1)/(e^x-1), x = 2*pi*10/14
inline constexpr double kDxMinus_10_14 = 0.8082625490895062;  // tanh(pi*10/28)
inline constexpr double kCross_10_14 = 0.21447959708754183;   // 1/sinh(pi*10/14)
inline constexpr double kVs4_40_60 = 1.0307962532021562;
inline constexpr double kDxMinus_40_60 = 0.78071443535926771;
inline constexpr double kEpr2 = 0.17157287525380990;          // (sqrt(2)-1)^2
inline constexpr double kLossy2Half = 0.58578643762690495;
inline constexpr double kExpMinusPi = 0.04321391826377225;
inline constexpr double kUnruh14e9 = 0.0170192745969;         // K
inline constexpr double kRayleighZ0 = 38805.2142565;          // m, W = 0.1925, lambda = 3e-6
inline constexpr double kEtaAt1e5 = 0.15058446535;
inline constexpr double kLog2Of3 = 1.5849625007211562;
inline constexpr double kScanLogRatio = 2.7059248017898966;   // ln(9.40e15/6.28e14)
inline constexpr double kOccupancyRow1 = 1.137381741e-7;      // nbar(6.28e14 rad/s, 300 K)
inline constexpr double kBlueKeyAt1e5 = 0.0064005644;         // (40e9, 60e9) source
inline constexpr double kRedKeyAt1e5 = 0.0047749924;          // (10e9, 14e9) source

}  // namespace oracle

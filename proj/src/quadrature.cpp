#include "vacqkd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace vacqkd {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be >= 0");
    if (!(n_sigma >= 4.0)) throw std::invalid_argument("QuadratureSpec: n_sigma must be >= 4");
    if (max_evals == 0) throw std::invalid_argument("QuadratureSpec: max_evals must be > 0");
}

namespace {

// (G7, K15) nodes and weights on [-1, 1]. Odd-index abscissae are the
// embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double lo = 0.0, hi = 0.0;
    double value = 0.0;
    double error = 0.0;
};

bool operator<(const Panel& a, const Panel& b) { return a.error < b.error; }

// One K15 application; error estimate scaled as in the classic QUADPACK rule.
Panel apply_rule(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);

    double fv1[7], fv2[7];
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[(j - 1) / 2] * sum;
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = resk * h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    p.error = err;
    return p;
}

IntegralResult integrate_counted(const std::function<double(double)>& f, double lo, double hi,
                                 double rel_tol, double abs_tol, std::size_t max_evals,
                                 std::size_t& evals) {
    if (!(lo < hi)) {
        if (lo == hi) return {0.0, 0.0, 0};
        throw std::invalid_argument("integrate: lo must be <= hi");
    }

    std::priority_queue<Panel> queue;
    const std::size_t start = evals;
    evals += 15;
    if (evals > max_evals) throw QuadratureBudgetError(0.0, 0.0, evals);
    queue.push(apply_rule(f, lo, hi));

    double value = queue.top().value;
    double error = queue.top().error;
    // Panels narrower than this cannot be meaningfully refined.
    const double min_width =
        16.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(lo), std::abs(hi), 1.0});
    double frozen_value = 0.0, frozen_error = 0.0;

    while (error + frozen_error > std::max(abs_tol, rel_tol * std::abs(value + frozen_value))) {
        if (queue.empty()) break;
        Panel worst = queue.top();
        queue.pop();
        value -= worst.value;
        error -= worst.error;
        if (worst.hi - worst.lo < min_width) {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        if (evals + 30 > max_evals)
            throw QuadratureBudgetError(value + worst.value + frozen_value,
                                        error + worst.error + frozen_error, evals);
        evals += 30;
        const double mid = 0.5 * (worst.lo + worst.hi);
        Panel left = apply_rule(f, worst.lo, mid);
        Panel right = apply_rule(f, mid, worst.hi);
        value += left.value + right.value;
        error += left.error + right.error;
        queue.push(left);
        queue.push(right);
    }

    return {value + frozen_value, error + frozen_error, evals - start};
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double lo, double hi,
                         double rel_tol, double abs_tol, std::size_t max_evals) {
    std::size_t evals = 0;
    return integrate_counted(f, lo, hi, rel_tol, abs_tol, max_evals, evals);
}

IntegralResult integrate_2d(const std::function<double(double, double)>& f,
                            double u_lo, double u_hi, double k_lo, double k_hi,
                            double rel_tol, std::size_t max_evals) {
    std::size_t evals = 0;
    const double inner_tol = 0.1 * rel_tol;
    double inner_error = 0.0;
    auto slice = [&](double k) {
        IntegralResult inner = integrate_counted(
            [&](double u) { return f(u, k); }, u_lo, u_hi, inner_tol, 0.0, max_evals, evals);
        inner_error = std::max(inner_error, inner.error);
        return inner.value;
    };
    IntegralResult outer = integrate_counted(slice, k_lo, k_hi, rel_tol, 0.0, max_evals, evals);
    outer.evals = evals;
    outer.error += inner_error * (k_hi - k_lo);
    return outer;
}

}  // namespace vacqkd

#include "pwt/ode.hpp"

#include "pwt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pwt {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

struct Stepper {
    const ODERhs& f;
    std::size_t dim;
    std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;

    explicit Stepper(const ODERhs& rhs, std::size_t d)
        : f(rhs), dim(d), k1(d), k2(d), k3(d), k4(d), k5(d), k6(d), k7(d), ytmp(d), ynew(d) {}

    // One trial step; returns the scaled error norm. k1 must hold f(x, y).
    double attempt(double x, const std::vector<double>& y, double h, const ODEOptions& opts) {
        for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        f(x + c2 * h, ytmp.data(), k2.data());
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(x + c3 * h, ytmp.data(), k3.data());
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(x + c4 * h, ytmp.data(), k4.data());
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(x + c5 * h, ytmp.data(), k5.data());
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i]
                                  + a65 * k5[i]);
        f(x + h, ytmp.data(), k6.data());
        for (std::size_t i = 0; i < dim; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(x + h, ynew.data(), k7.data());

        double err2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i]
                                  + e6 * k6[i] + e7 * k7[i]);
            const double sc = opts.abs_tol
                              + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err2 += (e / sc) * (e / sc);
        }
        return std::sqrt(err2 / static_cast<double>(dim));
    }
};

void integrate_span(const ODERhs& f, std::vector<double>& y, double x0, double x1,
                    double span_floor, const ODEOptions& opts, Stepper& st, bool fresh_k1) {
    if (x1 == x0) return;
    const double dir = x1 > x0 ? 1.0 : -1.0;
    double x = x0;
    double h = dir * std::min(std::abs(x1 - x0), 0.05 * span_floor);
    if (fresh_k1) f(x, y.data(), st.k1.data());
    while (dir * (x1 - x) > 0.0) {
        if (dir * (x + h) > dir * x1) h = x1 - x;
        const double err = st.attempt(x, y, h, opts);
        const double fac = err == 0.0 ? 5.0
                                      : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (err <= 1.0) {
            x += h;
            y.swap(st.ynew);
            st.k1.swap(st.k7); // FSAL
        }
        h *= fac;
        if (std::abs(h) < opts.min_step_frac * span_floor)
            throw StiffnessError("step size collapsed at x = " + std::to_string(x));
    }
}

} // namespace

std::vector<double> integrate_ode(const ODERhs& f, std::vector<double> y, double x0,
                                  double x1, const ODEOptions& opts) {
    Stepper st(f, y.size());
    integrate_span(f, y, x0, x1, std::abs(x1 - x0), opts, st, true);
    return y;
}

void integrate_ode_stops(const ODERhs& f, std::vector<double> y,
                         const std::vector<double>& stops,
                         const std::function<void(std::size_t, const std::vector<double>&)>& cb,
                         const ODEOptions& opts) {
    if (stops.empty()) return;
    Stepper st(f, y.size());
    const double span = std::abs(stops.back() - stops.front());
    cb(0, y);
    bool primed = false;
    for (std::size_t s = 1; s < stops.size(); ++s) {
        if (stops[s] != stops[s - 1]) {
            integrate_span(f, y, stops[s - 1], stops[s], span, opts, st, !primed);
            primed = true;
        }
        cb(s, y);
    }
}

} // namespace pwt

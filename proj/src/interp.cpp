#include "pwt/interp.hpp"

#include "pwt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pwt {

UniformInterp::UniformInterp(std::vector<double> samples, double x0, double h, int order)
    : m_samples(std::move(samples)), m_x0(x0), m_h(h), m_order(order) {
    if (m_samples.size() < 2) throw InconsistentInput("UniformInterp: needs >= 2 samples");
    if (!(h > 0.0)) throw InconsistentInput("UniformInterp: spacing must be positive");
    if (order != 1 && order != 3) throw InconsistentInput("UniformInterp: order must be 1 or 3");
    if (order == 3 && m_samples.size() < 4)
        throw InconsistentInput("UniformInterp: cubic needs >= 4 samples");
}

double UniformInterp::eval(double x) const {
    const int n = static_cast<int>(m_samples.size());
    const double s = (x - m_x0) / m_h;
    if (m_order == 1) {
        int i = std::clamp(static_cast<int>(std::floor(s)), 0, n - 2);
        const double t = s - i;
        return m_samples[i] * (1.0 - t) + m_samples[i + 1] * t;
    }
    int i = std::clamp(static_cast<int>(std::floor(s)), 0, n - 2);
    int j0 = std::clamp(i - 1, 0, n - 4);
    const double t = s - j0; // position relative to the 4-point stencil
    const double f0 = m_samples[j0], f1 = m_samples[j0 + 1], f2 = m_samples[j0 + 2],
                 f3 = m_samples[j0 + 3];
    const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return f0 * l0 + f1 * l1 + f2 * l2 + f3 * l3;
}

double UniformInterp::deriv(double x) const {
    const int n = static_cast<int>(m_samples.size());
    const double s = (x - m_x0) / m_h;
    if (m_order == 1) {
        int i = std::clamp(static_cast<int>(std::floor(s)), 0, n - 2);
        return (m_samples[i + 1] - m_samples[i]) / m_h;
    }
    int i = std::clamp(static_cast<int>(std::floor(s)), 0, n - 2);
    int j0 = std::clamp(i - 1, 0, n - 4);
    const double t = s - j0;
    const double f0 = m_samples[j0], f1 = m_samples[j0 + 1], f2 = m_samples[j0 + 2],
                 f3 = m_samples[j0 + 3];
    const double d0 = -(3.0 * t * t - 12.0 * t + 11.0) / 6.0;
    const double d1 = (3.0 * t * t - 10.0 * t + 6.0) / 2.0;
    const double d2 = -(3.0 * t * t - 8.0 * t + 3.0) / 2.0;
    const double d3 = (3.0 * t * t - 6.0 * t + 2.0) / 6.0;
    return (f0 * d0 + f1 * d1 + f2 * d2 + f3 * d3) / m_h;
}

std::complex<double> interp_complex(const std::vector<std::complex<double>>& samples, double x0,
                                    double h, double x) {
    const int n = static_cast<int>(samples.size());
    if (n < 4) throw InconsistentInput("interp_complex: needs >= 4 samples");
    const double s = (x - x0) / h;
    int i = std::clamp(static_cast<int>(std::floor(s)), 0, n - 2);
    int j0 = std::clamp(i - 1, 0, n - 4);
    const double t = s - j0;
    const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return samples[j0] * l0 + samples[j0 + 1] * l1 + samples[j0 + 2] * l2 + samples[j0 + 3] * l3;
}

MonotoneMap::MonotoneMap(std::vector<double> x_samples_uniform_start, double x0, double h,
                         std::vector<double> y_samples)
    : m_y(std::move(y_samples)), m_x0(x0), m_h(h), m_n(static_cast<int>(m_y.size())) {
    (void)x_samples_uniform_start;
    if (m_n < 4) throw InconsistentInput("MonotoneMap: needs >= 4 samples");
    for (int i = 0; i + 1 < m_n; ++i)
        if (!(m_y[i + 1] > m_y[i]))
            throw InconsistentInput("MonotoneMap: samples must be strictly increasing");
    m_fwd = UniformInterp(m_y, x0, h, 3);
}

double MonotoneMap::inverse(double y) const {
    if (y <= m_y.front()) return m_x0;
    if (y >= m_y.back()) return m_x0 + (m_n - 1) * m_h;
    // Bracket on the sample table, then Newton with bisection fallback.
    auto it = std::upper_bound(m_y.begin(), m_y.end(), y);
    int i = static_cast<int>(it - m_y.begin()) - 1;
    double lo = m_x0 + i * m_h;
    double hi = lo + m_h;
    double x = lo + (y - m_y[i]) / (m_y[i + 1] - m_y[i]) * m_h;
    for (int iter = 0; iter < 60; ++iter) {
        const double fy = m_fwd.eval(x) - y;
        if (std::abs(fy) < 1e-15 * std::max(1.0, std::abs(y))) break;
        if (fy > 0.0) hi = x;
        else lo = x;
        const double d = m_fwd.deriv(x);
        double next = (d != 0.0) ? x - fy / d : 0.5 * (lo + hi);
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-17 * std::max(1.0, std::abs(x))) { x = next; break; }
        x = next;
    }
    return x;
}

} // namespace pwt

#include "pwt/tridiag.hpp"

#include "pwt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pwt {

int sturm_count(const Tridiag& T, double x) {
    const std::size_t n = T.diag.size();
    // Pivot magnitude floor: patching a zero pivot to a mere -DBL_MIN sends
    // the next pivot to infinity and the one after back to zero, a cascade a
    // uniform chain regenerates at every row so no pivot ever counts. The
    // floor keeps off^2 / pivot finite and the patched pivot sign-counted.
    double off2_max = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        off2_max = std::max(off2_max, T.off[i] * T.off[i]);
    const double pivmin = std::numeric_limits<double>::min() * off2_max;
    int count = 0;
    double t = T.diag[0] - x;
    if (std::abs(t) <= pivmin) t = -pivmin;
    if (t < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        t = T.diag[i] - x - T.off[i - 1] * T.off[i - 1] / t;
        if (std::abs(t) <= pivmin) t = -pivmin;
        if (t < 0.0) ++count;
    }
    return count;
}

std::vector<double> tridiag_eigenvalues(const Tridiag& T, int n_max, double rel_tol) {
    const std::size_t n = T.diag.size();
    if (n_max < 0 || static_cast<std::size_t>(n_max) >= n)
        throw InsufficientModes("matrix of dimension " + std::to_string(n)
                                + " cannot supply eigenvalue index " + std::to_string(n_max));

    // Gershgorin enclosure of the whole spectrum.
    double lo = T.diag[0], hi = T.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(T.off[i - 1]);
        if (i + 1 < n) r += std::abs(T.off[i]);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    const double norm_scale = std::max(std::abs(lo), std::abs(hi));
    const double floor_tol = 8.0 * std::numeric_limits<double>::epsilon() * norm_scale
                             + std::numeric_limits<double>::min();

    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    double lower = lo;
    for (int k = 0; k <= n_max; ++k) {
        double a = lower, b = hi;
        // invariant: count(a) <= k < count(b)
        while (b - a > rel_tol * std::max(std::abs(a), std::abs(b)) + floor_tol) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (sturm_count(T, mid) > k) b = mid;
            else a = mid;
        }
        out[static_cast<std::size_t>(k)] = 0.5 * (a + b);
        lower = a; // eigenvalues ascend, reuse as the next lower bound
    }
    return out;
}

Tridiag reduce_generalized(const Tridiag& T, const std::vector<double>& D) {
    const std::size_t n = T.diag.size();
    if (D.size() != n) throw InconsistentInput("mass diagonal size mismatch");
    Tridiag B;
    B.diag.resize(n);
    B.off.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(D[i] > 0.0)) throw PositivityError("mass matrix entry not positive");
        B.diag[i] = T.diag[i] / D[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        B.off[i] = T.off[i] / std::sqrt(D[i] * D[i + 1]);
    return B;
}

} // namespace pwt

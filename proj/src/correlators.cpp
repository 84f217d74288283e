#include "pwt/correlators.hpp"

#include "pwt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pwt {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cdouble kI{0.0, 1.0};

// Shared series driver: value = sum coeff(n) * shape_i(n) * shape_ip(n)
// * exp(-i E_n dt) * exp(-eps E_n / v0).
template <typename Coeff, typename ShapeA, typename ShapeB>
SeriesResult run_series(const std::vector<EigenMode>& modes,
                        const std::vector<double>& energies, double dt, double eps,
                        double v0, int n_modes, Coeff coeff, ShapeA shape_i, ShapeB shape_ip,
                        cdouble prefactor) {
    if (n_modes < 1 || modes.size() < static_cast<std::size_t>(n_modes) + 1
        || energies.size() < static_cast<std::size_t>(n_modes) + 1)
        throw InsufficientModes("series needs n_modes+1 modes and energies");
    if (!(v0 > 0.0)) throw UsageError("v0 must be positive");
    if (eps < 0.0) throw UsageError("damping scale must be nonnegative");

    SeriesResult res;
    const double e_floor = 1e-9 * energies[1];
    double last_mag = 0.0, prev_mag = 0.0;
    for (int n = 1; n <= n_modes; ++n) {
        if (!(energies[n] > e_floor))
            throw InconsistentInput("vanishing energy above the zero mode");
        const cdouble phase = std::exp(-kI * energies[n] * dt - eps * energies[n] / v0);
        const cdouble term = prefactor * coeff(n) * shape_i(n) * shape_ip(n) * phase;
        res.value += term;
        prev_mag = last_mag;
        last_mag = std::abs(term);
    }
    // geometric remainder from the damping ratio of the last two terms
    if (prev_mag > 0.0 && last_mag > 0.0) {
        const double rho = std::min(last_mag / prev_mag, 1.0 - 1e-12);
        res.tail = last_mag * rho / (1.0 - rho);
    } else {
        res.tail = last_mag;
    }
    res.converged = res.tail <= std::max(1e-10, 1e-6 * std::abs(res.value));
    return res;
}

} // namespace

cdouble kernel_plus(double x, double eps, double L) {
    if (!(L > 0.0)) throw UsageError("L must be positive");
    if (!(eps > 0.0)) throw UsageError("kernel needs a positive regulator");
    const double th = 0.5 * kPi * x / L;
    const cdouble arg = 0.5 * kPi * (x + kI * eps) / L;
    return kI * kPi * std::exp(-kI * th) / (2.0 * L * std::sin(arg));
}

cdouble kernel_minus(double x, double eps, double L) { return kernel_plus(-x, eps, L); }

cdouble kernel_plus_series(double x, double eps, double L, int m_max) {
    if (m_max < 0) throw UsageError("m_max must be nonnegative");
    cdouble sum{0.0, 0.0};
    for (int m = 0; m <= m_max; ++m)
        sum += std::exp(kI * (kPi * m * x / L) - (2.0 * m + 1.0) * kPi * eps / (2.0 * L));
    return kPi / L * sum;
}

SeriesResult phi_phi_series(const std::vector<EigenMode>& modes,
                            const std::vector<double>& energies, std::size_t i,
                            std::size_t ip, double dt, double eps, double v0, int n_modes) {
    return run_series(
        modes, energies, dt, eps, v0, n_modes,
        [&](int n) { return 0.5 * kPi / energies[n]; },
        [&, i](int n) { return modes[n].u[i]; }, [&, ip](int n) { return modes[n].u[ip]; },
        cdouble{1.0, 0.0});
}

SeriesResult phi_theta_series(const std::vector<EigenMode>& modes,
                              const std::vector<double>& energies, std::size_t i,
                              std::size_t ip, double dt, double eps, double v0, int n_modes) {
    return run_series(
        modes, energies, dt, eps, v0, n_modes, [](int) { return 0.5 * kPi; },
        [&, i](int n) { return modes[n].u[i]; }, [&, ip](int n) { return modes[n].U[ip]; },
        kI);
}

SeriesResult theta_theta_series(const std::vector<EigenMode>& modes,
                                const std::vector<double>& energies, std::size_t i,
                                std::size_t ip, double dt, double eps, double v0, int n_modes) {
    return run_series(
        modes, energies, dt, eps, v0, n_modes,
        [&](int n) { return 0.5 * kPi * energies[n]; },
        [&, i](int n) { return modes[n].U[i]; }, [&, ip](int n) { return modes[n].U[ip]; },
        cdouble{1.0, 0.0});
}

ClosedFormResult phi_phi_closed(const UnfoldedMap& um, double x, double t, double xp,
                                double tp, double eps) {
    if (!(eps > 0.0)) throw UsageError("closed form needs a positive regulator");
    const double L = um.L;
    const double f = um.f(x), fp = um.f(xp);
    const double dt = um.v0 * (t - tp);

    const double A1 = f - fp - dt;
    const double A2 = f + fp + L - dt;
    const double A3 = f + fp + L + dt;
    const double A4 = f - fp + dt;

    ClosedFormResult out;
    // Each term is -log(1 - r) with |r| = exp(-pi eps / L) < 1, so the
    // principal branch is the analytic one; the flag fires when the log
    // argument approaches the origin.
    const auto term_plus = [&](double A) {
        const cdouble w = 1.0 - std::exp(kI * kPi * (A + kI * eps) / L);
        if (std::abs(w) < 1e-12) out.near_branch_cut = true;
        return -std::log(w);
    };
    const auto term_minus = [&](double A) {
        const cdouble w = 1.0 - std::exp(-kI * kPi * (A - kI * eps) / L);
        if (std::abs(w) < 1e-12) out.near_branch_cut = true;
        return -std::log(w);
    };
    out.value = 0.25 * (term_plus(A1) + term_plus(A2) + term_minus(A3) + term_minus(A4));
    return out;
}

} // namespace pwt

#include "pwt/solver_shooting.hpp"

#include "pwt/errors.hpp"
#include "pwt/ode.hpp"
#include "pwt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pwt {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Left/right base angles of the Pruefer phase: cot(theta) = p * eta.
double base_angle(const SLProblem& prob, bool left) {
    if (prob.bc == BCKind::Neumann) return 0.5 * kPi;
    const double x = left ? -0.5 * prob.L : 0.5 * prob.L;
    const double eta = left ? prob.eta_left : prob.eta_right;
    return std::atan2(1.0, prob.p(x) * eta);
}

ODEOptions ode_opts(const ShootingOptions& o) {
    ODEOptions opts;
    opts.rel_tol = o.ode_rel_tol;
    opts.abs_tol = o.ode_abs_tol;
    return opts;
}

// Integrated phase scale: lambda near (pi n / T_weyl)^2 advances n half-turns.
double weyl_time(const SLProblem& prob) {
    return integrate_adaptive([&](double x) { return std::sqrt(prob.w(x) / prob.p(x)); },
                              -0.5 * prob.L, 0.5 * prob.L, 1e-10, 0.0);
}

} // namespace

double shooting_phase(const SLProblem& prob, double lambda, const ShootingOptions& opts) {
    const auto rhs = [&prob, lambda](double x, const double* y, double* dy) {
        const double c = std::cos(y[0]), s = std::sin(y[0]);
        dy[0] = c * c / prob.p(x) + (lambda * prob.w(x) + prob.q(x)) * s * s;
    };
    std::vector<double> th{base_angle(prob, true)};
    th = integrate_ode(rhs, th, -0.5 * prob.L, 0.5 * prob.L, ode_opts(opts));
    return th[0];
}

SLSpectrum solve_spectrum_shooting(const SLProblem& prob, int n_max,
                                   const ShootingOptions& opts) {
    if (n_max < 0) throw UsageError("n_max must be nonnegative");
    const double tw = weyl_time(prob);
    const double lam_scale = (kPi / tw) * (kPi / tw);
    const double right_base = base_angle(prob, false);

    SLSpectrum spec;
    spec.method = SpectrumMethod::Shooting;
    spec.lambdas.resize(n_max + 1);
    spec.errors.resize(n_max + 1);

    auto phase = [&](double lam) { return shooting_phase(prob, lam, opts); };

    double prev = 0.0;
    bool have_prev = false;
    for (int n = 0; n <= n_max; ++n) {
        if (n == 0 && prob.q_is_zero && prob.bc == BCKind::Neumann) {
            spec.lambdas[0] = 0.0;
            spec.errors[0] = 0.0;
            prev = 0.0;
            have_prev = true;
            continue;
        }
        const double target = right_base + n * kPi;

        // Bracket the root of phase(lambda) - target.
        double lo, glo;
        if (have_prev) {
            lo = prev;
            // phase(prev) equals the previous target, below this one; the
            // NaN keeps the secant from using a fabricated residual.
            glo = std::numeric_limits<double>::quiet_NaN();
        } else {
            lo = -lam_scale;
            glo = phase(lo) - target;
            int tries = 0;
            while (glo >= 0.0) {
                if (++tries > opts.max_bracket_steps)
                    throw BracketError("no lower bracket for eigenvalue " + std::to_string(n));
                lo = lo * 2.0 - lam_scale;
                glo = phase(lo) - target;
            }
        }
        double hi = std::max(lam_scale * (n + 1.0) * (n + 1.0), lo + lam_scale);
        double ghi = phase(hi) - target;
        {
            int tries = 0;
            while (ghi <= 0.0) {
                if (++tries > opts.max_bracket_steps)
                    throw BracketError("no upper bracket for eigenvalue " + std::to_string(n));
                hi = 2.0 * hi + lam_scale;
                ghi = phase(hi) - target;
            }
        }

        // Bisect to a safe width, then safeguarded secant.
        double a = lo, ga = glo, b = hi, gb = ghi;
        for (int it = 0; it < 200; ++it) {
            if (b - a <= opts.rel_tol * std::max(std::abs(b), lam_scale)) break;
            double m;
            const bool secant_ok = it >= 6 && ga == ga && ga < 0.0 && gb > 0.0;
            if (secant_ok) {
                m = a - ga * (b - a) / (gb - ga);
                const double guard = 0.01 * (b - a);
                if (!(m > a + guard && m < b - guard)) m = 0.5 * (a + b);
            } else {
                m = 0.5 * (a + b);
            }
            const double gm = phase(m) - target;
            if (gm > 0.0) {
                b = m;
                gb = gm;
            } else {
                a = m;
                ga = gm;
            }
        }
        spec.lambdas[n] = 0.5 * (a + b);
        spec.errors[n] = 0.5 * (b - a);
        prev = spec.lambdas[n];
        have_prev = true;
    }

    const double scale = std::max(std::abs(spec.lambdas.front()), std::abs(spec.lambdas.back()));
    spec.energies = energies_from_lambdas(spec.lambdas, scale);
    return spec;
}

EigenMode eigenfunction(const SLProblem& prob, const SystemGeometry& geom, double lambda,
                        int n, const ShootingOptions& opts) {
    if (std::abs(geom.L - prob.L) > 1e-12 * prob.L)
        throw InconsistentInput("grid length does not match the problem length");
    const auto x = make_grid(geom);
    const std::size_t N = x.size();

    // State: u, p u', running integral of w u, running integral of w u^2.
    const auto rhs = [&prob, lambda](double xx, const double* y, double* dy) {
        dy[0] = y[1] / prob.p(xx);
        dy[1] = -(lambda * prob.w(xx) + prob.q(xx)) * y[0];
        dy[2] = prob.w(xx) * y[0];
        dy[3] = prob.w(xx) * y[0] * y[0];
    };

    EigenMode mode;
    mode.n = n;
    mode.lambda = lambda;
    mode.u.resize(N);
    mode.U.resize(N);

    std::vector<double> y0{1.0, 0.0, 0.0, 0.0};
    if (prob.bc == BCKind::Robin) y0[1] = prob.p(x.front()) * prob.eta_left;
    double wnorm2 = 0.0;
    integrate_ode_stops(rhs, y0, x,
                        [&](std::size_t i, const std::vector<double>& y) {
                            mode.u[i] = y[0];
                            mode.U[i] = y[2];
                            if (i + 1 == N) wnorm2 = y[3];
                        },
                        ode_opts(opts));

    if (!(wnorm2 > 0.0) || !std::isfinite(wnorm2))
        throw NormalizationError("weighted norm of the eigenfunction is not positive");
    const double inv = 1.0 / std::sqrt(wnorm2);
    for (std::size_t i = 0; i < N; ++i) {
        mode.u[i] *= inv;
        mode.U[i] *= inv;
    }

    mode.zero_count = count_sign_changes(mode.u);

    double umax = 0.0, de = 0.0, dod = 0.0;
    for (std::size_t i = 0; i < N; ++i) umax = std::max(umax, std::abs(mode.u[i]));
    for (std::size_t i = 0; i < N; ++i) {
        const double m = mode.u[N - 1 - i];
        de = std::max(de, std::abs(mode.u[i] - m));
        dod = std::max(dod, std::abs(mode.u[i] + m));
    }
    mode.parity_defect = std::min(de, dod) / umax;
    constexpr double kParityTol = 1e-6;
    if (de / umax <= kParityTol) mode.parity = ParityClass::Even;
    else if (dod / umax <= kParityTol) mode.parity = ParityClass::Odd;
    else mode.parity = ParityClass::Neither;

    return mode;
}

std::vector<EigenMode> eigenmodes(const SLProblem& prob, const SystemGeometry& geom,
                                  const SLSpectrum& spec, int n_max,
                                  const ShootingOptions& opts) {
    if (n_max < 0 || static_cast<std::size_t>(n_max) >= spec.lambdas.size())
        throw InsufficientModes("spectrum holds " + std::to_string(spec.lambdas.size())
                                + " eigenvalues, mode " + std::to_string(n_max) + " requested");
    std::vector<EigenMode> modes;
    modes.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        modes.push_back(eigenfunction(prob, geom, spec.lambdas[n], n, opts));
    return modes;
}

} // namespace pwt

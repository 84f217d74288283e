#include "pwt/solver_fd.hpp"

#include "pwt/errors.hpp"
#include "pwt/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pwt {

namespace {

std::vector<double> eigenvalues_on(const SLProblem& prob, int N, int n_max) {
    const double L = prob.L;
    const double h = L / (N - 1);
    Tridiag T;
    std::vector<double> D(N);
    T.diag.resize(N);
    T.off.resize(N - 1);

    std::vector<double> phalf(N - 1);
    for (int i = 0; i + 1 < N; ++i)
        phalf[i] = prob.p(-0.5 * L + (i + 0.5) * h);

    for (int i = 0; i < N; ++i) {
        const double x = -0.5 * L + i * h;
        const double qi = prob.q(x);
        const double wi = prob.w(x);
        if (i == 0) {
            T.diag[i] = phalf[0] / h - 0.5 * h * qi;
            D[i] = 0.5 * h * wi;
        } else if (i == N - 1) {
            T.diag[i] = phalf[N - 2] / h - 0.5 * h * qi;
            D[i] = 0.5 * h * wi;
        } else {
            T.diag[i] = (phalf[i - 1] + phalf[i]) / h - h * qi;
            D[i] = h * wi;
        }
        if (i + 1 < N) T.off[i] = -phalf[i] / h;
    }
    if (prob.bc == BCKind::Robin) {
        T.diag[0] += prob.p(-0.5 * L) * prob.eta_left;
        T.diag[N - 1] -= prob.p(0.5 * L) * prob.eta_right;
    }

    return tridiag_eigenvalues(reduce_generalized(T, D), n_max);
}

} // namespace

SLSpectrum solve_spectrum_fd(const SLProblem& prob, int n_max, const FDOptions& opts) {
    if (n_max < 0) throw UsageError("n_max must be nonnegative");
    if (opts.refinements < 1 || opts.refinements > 2)
        throw UsageError("refinements must be 1 or 2");

    int base = opts.base_points;
    if (base <= 0) base = std::max(2049, 80 * (n_max + 1) + 1);
    if (base % 2 == 0) ++base;
    if (base < 4 * (n_max + 2))
        throw InsufficientModes("grid of " + std::to_string(base)
                                + " points cannot resolve mode " + std::to_string(n_max));

    const auto l1 = eigenvalues_on(prob, base, n_max);
    const auto l2 = eigenvalues_on(prob, 2 * base - 1, n_max);

    SLSpectrum spec;
    spec.method = SpectrumMethod::FiniteDifference;
    const std::size_t cnt = l1.size();
    spec.lambdas.resize(cnt);
    spec.errors.resize(cnt);

    if (opts.refinements == 1) {
        for (std::size_t i = 0; i < cnt; ++i) {
            spec.lambdas[i] = (4.0 * l2[i] - l1[i]) / 3.0;
            spec.errors[i] = std::abs(l2[i] - l1[i]) / 3.0;
        }
    } else {
        const auto l3 = eigenvalues_on(prob, 4 * base - 3, n_max);
        for (std::size_t i = 0; i < cnt; ++i) {
            const double r1 = (4.0 * l2[i] - l1[i]) / 3.0;
            const double r2 = (4.0 * l3[i] - l2[i]) / 3.0;
            spec.lambdas[i] = (16.0 * r2 - r1) / 15.0;
            spec.errors[i] = std::abs(r2 - r1) / 15.0;
        }
    }

    // Structural zero mode: with q = 0 and Neumann walls the constant is an
    // exact eigenfunction, so pin the roundoff away.
    if (prob.q_is_zero && prob.bc == BCKind::Neumann) spec.lambdas[0] = 0.0;

    const double scale = std::max(std::abs(spec.lambdas.front()), std::abs(spec.lambdas.back()));
    for (std::size_t i = 0; i < cnt; ++i) {
        const double ref = std::max(std::abs(spec.lambdas[i]), 1e-3 * scale);
        if (scale > 0.0 && spec.errors[i] > opts.rel_tol * ref)
            throw ConvergenceError("eigenvalue " + std::to_string(i) + " estimate "
                                   + std::to_string(spec.errors[i])
                                   + " exceeds tolerance; refine the grid");
    }

    spec.energies = energies_from_lambdas(spec.lambdas, scale);
    return spec;
}

} // namespace pwt

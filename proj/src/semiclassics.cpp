#include "pwt/semiclassics.hpp"

#include "pwt/errors.hpp"
#include "pwt/grid.hpp"
#include "pwt/interp.hpp"
#include "pwt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pwt {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

WeylReport weyl_check(const std::vector<double>& energies, double v0, double L,
                      double rel_tol) {
    const std::size_t N = energies.size();
    if (N < 50)
        throw InsufficientModes("counting fit needs at least 50 levels, got "
                                + std::to_string(N));
    const std::size_t lo = N / 2;
    double se = 0.0, sn = 0.0, see = 0.0, sen = 0.0;
    const double cnt = static_cast<double>(N - lo);
    for (std::size_t n = lo; n < N; ++n) {
        se += energies[n];
        sn += static_cast<double>(n);
        see += energies[n] * energies[n];
        sen += energies[n] * static_cast<double>(n);
    }
    const double det = cnt * see - se * se;
    if (!(std::abs(det) > 0.0)) throw RankDeficient("degenerate counting fit");
    WeylReport rep;
    rep.slope = (cnt * sen - se * sn) / det;
    rep.intercept = (sn - rep.slope * se) / cnt;
    rep.expected = L / (kPi * v0);
    rep.rel_dev = std::abs(rep.slope - rep.expected) / rep.expected;
    rep.ok = rep.rel_dev <= rel_tol;
    return rep;
}

BSPhase bs_phase(const LiouvilleForm& form, double lambda_scaled) {
    const double h = form.y[1] - form.y[0];
    double vmax = -1e300;
    for (double s : form.V) vmax = std::max(vmax, s);
    const double gap = lambda_scaled - vmax;
    if (!(gap > 1e-12 * std::max({std::abs(lambda_scaled), std::abs(vmax), 1.0})))
        throw TurningPointError("level " + std::to_string(lambda_scaled)
                                + " does not clear the barrier top " + std::to_string(vmax));

    UniformInterp Vi(form.V, form.y.front(), h, 3);
    const auto d2 = uniform_second_derivative(form.V, h);
    UniformInterp Vpp(d2, form.y.front(), h, 3);

    BSPhase ph;
    ph.phi0 = integrate_adaptive(
        [&](double y) { return std::sqrt(lambda_scaled - Vi.eval(y)); }, form.y.front(),
        form.y.back(), 1e-11, 0.0);
    ph.phi1 = 0.125
              * integrate_adaptive(
                  [&](double y) {
                      return Vpp.eval(y) * std::pow(lambda_scaled - Vi.eval(y), -1.5);
                  },
                  form.y.front(), form.y.back(), 1e-10, 1e-14);
    return ph;
}

std::vector<double> quantization_residuals(const LiouvilleForm& form,
                                           const std::vector<double>& lambdas, int n0) {
    std::vector<double> out(lambdas.size());
    const double iv2 = 1.0 / (form.v0 * form.v0);
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        out[i] = bs_phase(form, lambdas[i] * iv2).total() - kPi * static_cast<double>(n0 + i);
    return out;
}

std::vector<double> phase_residuals(const LiouvilleForm& form,
                                    const std::vector<double>& lambdas) {
    std::vector<double> out(lambdas.size());
    const double iv2 = 1.0 / (form.v0 * form.v0);
    for (std::size_t n = 0; n < lambdas.size(); ++n) {
        const double lam = std::max(0.0, lambdas[n] * iv2);
        out[n] = std::sqrt(lam) * form.L - kPi * static_cast<double>(n);
    }
    return out;
}

MomentReport moment_conditions(const LiouvilleForm& form) {
    MomentReport rep;
    const double h = form.y[1] - form.y[0];
    double vmax = 0.0;
    for (double s : form.V) {
        if (!std::isfinite(s)) {
            rep.divergent = true;
            return rep;
        }
        vmax = std::max(vmax, std::abs(s));
    }
    std::vector<double> V2(form.V.size());
    for (std::size_t j = 0; j < form.V.size(); ++j) V2[j] = form.V[j] * form.V[j];
    rep.a1 = simpson(form.V, h) / form.L;
    rep.a2 = simpson(V2, h) / form.L;
    rep.delta = (uniform_end_derivative(form.V, h, false)
                 - uniform_end_derivative(form.V, h, true))
                / form.L;
    const double iL2 = 1.0 / (form.L * form.L);
    // The end stencil amplifies the sample noise of V by about 12/h, which
    // caps how sharply delta can be resolved; fold that into the verdict.
    const double delta_noise =
        25.0 * form.deriv_error_estimate / (form.v0 * form.v0) / (h * form.L);
    rep.tol1 = 1e-6 * std::max(iL2, vmax);
    rep.tol2 = std::max(1e-6 * std::max(iL2 * iL2, vmax * vmax), delta_noise);
    rep.a1_zero = std::abs(rep.a1) <= rep.tol1;
    rep.second_zero = std::abs(rep.a2 - rep.delta) <= rep.tol2;
    return rep;
}

ResidualFit fit_phase_residuals(const LiouvilleForm& form, const std::vector<double>& lambdas,
                                int n_lo, int n_hi) {
    if (n_lo < 1 || n_hi <= n_lo || static_cast<std::size_t>(n_hi) >= lambdas.size())
        throw UsageError("residual fit window out of range");
    const auto res = phase_residuals(form, lambdas);
    const double iv2 = 1.0 / (form.v0 * form.v0);
    // basis: b1 = L / (2 sqrt(Lambda)), b3 = L / (8 Lambda^(3/2))
    double s11 = 0.0, s13 = 0.0, s33 = 0.0, r1 = 0.0, r3 = 0.0;
    for (int n = n_lo; n <= n_hi; ++n) {
        const double lam = lambdas[n] * iv2;
        if (!(lam > 0.0)) throw InconsistentInput("nonpositive level in residual fit");
        const double b1 = form.L / (2.0 * std::sqrt(lam));
        const double b3 = form.L / (8.0 * lam * std::sqrt(lam));
        s11 += b1 * b1;
        s13 += b1 * b3;
        s33 += b3 * b3;
        r1 += b1 * res[n];
        r3 += b3 * res[n];
    }
    const double det = s11 * s33 - s13 * s13;
    if (!(std::abs(det) > 1e-300)) throw RankDeficient("residual fit basis is degenerate");
    ResidualFit fit;
    fit.c1 = (s33 * r1 - s13 * r3) / det;
    fit.c3 = (s11 * r3 - s13 * r1) / det;
    double ss = 0.0;
    for (int n = n_lo; n <= n_hi; ++n) {
        const double lam = lambdas[n] * iv2;
        const double b1 = form.L / (2.0 * std::sqrt(lam));
        const double b3 = form.L / (8.0 * lam * std::sqrt(lam));
        const double e = res[n] - fit.c1 * b1 - fit.c3 * b3;
        ss += e * e;
    }
    fit.rms = std::sqrt(ss / (n_hi - n_lo + 1));
    return fit;
}

} // namespace pwt

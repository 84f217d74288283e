#include "pwt/gegenbauer.hpp"

#include "pwt/errors.hpp"
#include "pwt/grid.hpp"
#include "pwt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pwt {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate(const GegenbauerFamily& fam) {
    if (!(fam.alpha >= 0.0)) throw InputError("stiffness exponent must be nonnegative");
    if (!(fam.v_amp > 0.0) || !(fam.K_amp > 0.0))
        throw PositivityError("profile amplitudes must be positive");
    if (fam.massive) {
        const double r = fam.alpha / 2.0;
        if (!(fam.alpha > 0.0) || std::abs(r - std::round(r)) > 1e-12)
            throw InconsistentInput("the fine-tuned massive variant needs a positive even "
                                    "integer exponent");
    }
}

} // namespace

double gegenbauer_poly(int n, double alpha, double s) {
    if (n == 0) return 1.0;
    if (alpha == 0.0) {
        // Chebyshev recurrence
        double pm = 1.0, pc = s;
        for (int k = 2; k <= n; ++k) {
            const double pn = 2.0 * s * pc - pm;
            pm = pc;
            pc = pn;
        }
        return pc;
    }
    double pm = 1.0, pc = 2.0 * alpha * s;
    for (int k = 2; k <= n; ++k) {
        const double pn = (2.0 * s * (k + alpha - 1.0) * pc - (k + 2.0 * alpha - 2.0) * pm) / k;
        pm = pc;
        pc = pn;
    }
    return pc;
}

TLLModel gegenbauer_model(const GegenbauerFamily& fam, const SystemGeometry& geom) {
    validate(fam);
    const auto v = ProfileFn::sqrt_profile(fam.v_amp);
    const auto K = ProfileFn::power_profile(fam.K_amp, fam.alpha);
    if (!fam.massive) return make_massless(geom, v, K);
    const double c = 2.0 * fam.v_amp * fam.alpha / geom.L;
    const auto q = ProfileFn::power_profile(-c * c * fam.K_amp / fam.v_amp, fam.alpha - 0.5);
    return make_with_q(geom, v, K, q);
}

SLSpectrum gegenbauer_spectrum(const GegenbauerFamily& fam, const SystemGeometry& geom,
                               int n_max) {
    validate(fam);
    if (n_max < 0) throw UsageError("n_max must be nonnegative");
    const double v0 = 2.0 * fam.v_amp / kPi;
    const double k2 = (kPi * v0 / geom.L) * (kPi * v0 / geom.L);
    SLSpectrum spec;
    spec.method = SpectrumMethod::ClosedForm;
    spec.lambdas.resize(n_max + 1);
    spec.errors.assign(n_max + 1, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        const double nn = n;
        spec.lambdas[n] = fam.massive ? k2 * (nn + fam.alpha) * (nn + fam.alpha)
                                      : k2 * nn * (nn + 2.0 * fam.alpha);
    }
    spec.energies = energies_from_lambdas(spec.lambdas, spec.lambdas.back());
    return spec;
}

std::vector<EigenMode> gegenbauer_modes(const GegenbauerFamily& fam,
                                        const SystemGeometry& geom, int n_max) {
    validate(fam);
    if (n_max < 0) throw UsageError("n_max must be nonnegative");
    const auto spec = gegenbauer_spectrum(fam, geom, n_max);
    const auto x = make_grid(geom);
    const std::size_t N = x.size();
    const std::size_t mid = N / 2;
    const double L = geom.L;
    const double wamp = fam.K_amp / fam.v_amp;
    const double wexp = fam.alpha - 0.5;

    // Weighted norms of the polynomials over [-1, 1], exact at this order.
    const auto rule = gauss_jacobi(n_max + 2, wexp, wexp);

    std::vector<EigenMode> modes(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        double norm2 = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double P = gegenbauer_poly(n, fam.alpha, rule.nodes[j]);
            norm2 += rule.weights[j] * P * P;
        }
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        const double cn = sign / std::sqrt(wamp * 0.5 * L * norm2);

        EigenMode& m = modes[n];
        m.n = n;
        m.lambda = spec.lambdas[n];
        m.u.resize(N);
        m.U.resize(N);
        for (std::size_t i = 0; i <= mid; ++i) {
            const double s = 2.0 * x[i] / L;
            m.u[i] = cn * gegenbauer_poly(n, fam.alpha, s);
            m.u[N - 1 - i] = sign * m.u[i]; // symmetric fill, exact parity
        }

        // Running weighted integral, singular edge cells by a double
        // exponential rule.
        const auto wu = [&](double xx) {
            const double s = 2.0 * xx / L;
            const double g = std::max(0.0, 1.0 - s * s);
            return cn * wamp * std::pow(g, wexp) * gegenbauer_poly(n, fam.alpha, s);
        };
        m.U[0] = 0.0;
        for (std::size_t i = 0; i + 1 < N; ++i) {
            const bool edge = i == 0 || i + 2 == N;
            const double cell = edge ? integrate_tanh_sinh(wu, x[i], x[i + 1], 1e-12)
                                     : integrate_adaptive(wu, x[i], x[i + 1], 1e-12, 1e-15);
            m.U[i + 1] = m.U[i] + cell;
        }

        m.zero_count = n;
        m.parity = n % 2 == 0 ? ParityClass::Even : ParityClass::Odd;
        m.parity_defect = 0.0;
    }
    return modes;
}

} // namespace pwt

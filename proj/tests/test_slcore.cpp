#include <doctest.h>

#include "testutil.hpp"

#include "pwt/errors.hpp"
#include "pwt/gegenbauer.hpp"
#include "pwt/grid.hpp"
#include "pwt/model.hpp"
#include "pwt/slcoeffs.hpp"
#include "pwt/solver_fd.hpp"
#include "pwt/solver_shooting.hpp"
#include "pwt/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace pwt;

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

TEST_CASE("coefficient identities w*p = K^2 and p/w = v^2") {
    SystemGeometry geom(2.0, 129);
    auto model = make_with_q(geom, ProfileFn::cosine_series({1.0, 0.0, 0.2}),
                             ProfileFn::cosine_series({1.5, 0.0, -0.1, 0.0, 0.05}),
                             ProfileFn::constant(-0.3));
    auto co = assemble_coefficients(model);
    for (double x : {-0.9, -0.3, 0.0, 0.42, 0.77}) {
        const double K = model.K.eval(x, geom.L);
        const double v = model.v.eval(x, geom.L);
        CHECK_REL(co.w(x) * co.p(x), K * K, 1e-14);
        CHECK_REL(co.p(x) / co.w(x), v * v, 1e-14);
        CHECK(co.q_at(x) == -0.3);
    }
    auto free_co = assemble_coefficients(make_massless(geom, ProfileFn::constant(1.0),
                                                       ProfileFn::constant(1.0)));
    CHECK(free_co.q_at(0.1) == 0.0);
    CHECK(free_co.problem().q_is_zero);
}

TEST_CASE("dual-route spectrum on the free channel matches (pi n / L)^2") {
    SystemGeometry geom(1.0, 129);
    auto prob = assemble_coefficients(make_massless(geom, ProfileFn::constant(1.0),
                                                    ProfileFn::constant(1.0)))
                    .problem();
    auto fd = solve_spectrum_fd(prob, 10, FDOptions{0, 2, 1e-4});
    auto sh = solve_spectrum_shooting(prob, 10);
    REQUIRE(fd.lambdas.size() == 11);
    REQUIRE(sh.lambdas.size() == 11);
    CHECK(fd.lambdas[0] == 0.0); // pinned by the structural q = 0 flag
    const double scale = pi * pi * 100.0;
    for (int n = 0; n <= 10; ++n) {
        const double exact = pi * pi * n * n;
        CHECK_ABS(fd.lambdas[n], exact, 1e-8 * scale);
        CHECK_ABS(sh.lambdas[n], exact, 1e-8 * scale);
        CHECK(fd.errors[n] >= 0.0);
    }
    CHECK(fd.method == SpectrumMethod::FiniteDifference);
    CHECK(sh.method == SpectrumMethod::Shooting);
}

TEST_CASE("dual-route spectrum agrees on a modulated stiffness channel") {
    SystemGeometry geom(1.0, 257);
    auto model = make_massless(geom, ProfileFn::constant(1.0),
                               ProfileFn::cosine_series({1.0, 0.0, 0.3}));
    auto prob = assemble_coefficients(model).problem();
    auto fd = solve_spectrum_fd(prob, 8, FDOptions{0, 2, 1e-4});
    auto sh = solve_spectrum_shooting(prob, 8);
    const double scale = sh.lambdas.back();
    for (int n = 0; n <= 8; ++n) CHECK_ABS(fd.lambdas[n], sh.lambdas[n], 1e-8 * scale);
}

TEST_CASE("energies_from_lambdas clamps roundoff and rejects real negatives") {
    auto e = energies_from_lambdas({-1e-12, 1.0, 4.0}, 1.0);
    CHECK(e[0] == 0.0);
    CHECK(e[1] == 1.0);
    CHECK(e[2] == 2.0);
    CHECK_THROWS_AS(energies_from_lambdas({-0.5, 1.0}, 1.0), InconsistentInput);
}

TEST_CASE("gegenbauer_poly degenerates to the classical families") {
    // alpha = 0: first-kind Chebyshev, cos(n acos s).
    for (int n = 0; n <= 6; ++n)
        for (double s : {-0.9, -0.5, 0.0, 0.3, 0.8})
            CHECK_ABS(gegenbauer_poly(n, 0.0, s), std::cos(n * std::acos(s)), 1e-13);
    // alpha = 1: second-kind Chebyshev, sin((n+1) t) / sin t.
    for (int n = 0; n <= 5; ++n)
        for (double s : {-0.7, 0.2, 0.6}) {
            const double t = std::acos(s);
            CHECK_REL(gegenbauer_poly(n, 1.0, s), std::sin((n + 1) * t) / std::sin(t), 1e-13);
        }
    // alpha = 1/2: Legendre.
    for (double s : {-0.4, 0.5, 0.9}) {
        CHECK_REL(gegenbauer_poly(2, 0.5, s), 0.5 * (3.0 * s * s - 1.0), 1e-13);
        CHECK_REL(gegenbauer_poly(3, 0.5, s), 0.5 * (5.0 * s * s - 3.0) * s, 1e-13);
        CHECK_REL(gegenbauer_poly(4, 0.5, s), (35.0 * s * s * s * s - 30.0 * s * s + 3.0) / 8.0,
                  1e-13);
    }
}

TEST_CASE("gegenbauer_spectrum closed forms") {
    SystemGeometry geom(2.0, 129);
    GegenbauerFamily fam{0.5, 1.3, 0.9, false};
    auto spec = gegenbauer_spectrum(fam, geom, 6);
    CHECK(spec.method == SpectrumMethod::ClosedForm);
    const double v0 = 2.0 * 1.3 / pi;
    const double unit = (pi * v0 / geom.L) * (pi * v0 / geom.L);
    for (int n = 0; n <= 6; ++n) CHECK_REL(spec.lambdas[n], unit * n * (n + 1.0), 1e-14);

    GegenbauerFamily massive{2.0, 1.0, 1.0, true};
    auto mspec = gegenbauer_spectrum(massive, geom, 5);
    const double u2 = (2.0 / geom.L) * (2.0 / geom.L);
    for (int n = 0; n <= 5; ++n) CHECK_REL(mspec.lambdas[n], u2 * (n + 2.0) * (n + 2.0), 1e-14);

    CHECK_THROWS_AS(gegenbauer_model(GegenbauerFamily{3.0, 1.0, 1.0, true}, geom),
                    InconsistentInput);
    CHECK_THROWS_AS(gegenbauer_model(GegenbauerFamily{-1.0, 1.0, 1.0, false}, geom), InputError);
}

TEST_CASE("gegenbauer_modes carry Chebyshev shapes, node counts and parity") {
    SystemGeometry geom(2.0, 129);
    auto modes = gegenbauer_modes(GegenbauerFamily{0.0, 1.0, 1.0, false}, geom, 6);
    REQUIRE(modes.size() == 7);
    auto grid = make_grid(geom);
    for (int n = 0; n <= 6; ++n) {
        const auto& m = modes[n];
        CHECK(m.n == n);
        CHECK(m.zero_count == n);
        CHECK(m.parity == (n % 2 == 0 ? ParityClass::Even : ParityClass::Odd));
        CHECK(m.parity_defect <= 1e-12);
        // Normalization-free shape check: sample ratios match T_n ratios.
        const std::size_t i = 32, j = 24; // s = -1/2 and s = -5/8
        const double si = 2.0 * grid[i] / geom.L, sj = 2.0 * grid[j] / geom.L;
        const double tn_i = std::cos(n * std::acos(si));
        const double tn_j = std::cos(n * std::acos(sj));
        if (std::abs(tn_j) > 0.1 && std::abs(tn_i) > 0.1)
            CHECK_REL(m.u[i] / m.u[j], tn_i / tn_j, 1e-10);
    }
}

TEST_CASE("liouville transform keeps Neumann ends for flat-ended K") {
    SystemGeometry geom(1.0, 2049);
    auto model = make_massless(geom, ProfileFn::constant(1.0),
                               ProfileFn::cosine_series({1.0, 0.0, 0.2}));
    auto form = liouville_transform(model);
    CHECK(std::abs(form.eta_left) <= 1e-9);
    CHECK(std::abs(form.eta_right) <= 1e-9);
    CHECK_REL(form.v0, 1.0, 1e-12);

    // Isospectrality: the potential-form problem in y against the original
    // coefficient problem in x, solved by independent methods.
    auto sh = solve_spectrum_shooting(assemble_coefficients(model).problem(), 8);
    auto fd = solve_spectrum_fd(form.problem(), 8, FDOptions{0, 2, 1e-3});
    const double scale = sh.lambdas.back();
    for (int n = 0; n <= 8; ++n) CHECK_ABS(fd.lambdas[n], sh.lambdas[n], 2e-6 * scale);
}

TEST_CASE("liouville transform produces Robin ends when K has seam slope") {
    SystemGeometry geom(1.0, 2049);
    auto model = make_massless(geom, ProfileFn::constant(1.0),
                               ProfileFn::cosine_series({1.0, 0.3}));
    auto form = liouville_transform(model);
    // K is even, so the end log-slopes mirror with opposite sign.
    CHECK(std::abs(form.eta_left + form.eta_right) <= 1e-8 * std::abs(form.eta_right));
    CHECK(std::abs(form.eta_right) > 0.1);
    CHECK(form.problem().bc == BCKind::Robin);

    // The x-problem is plain Neumann; the y-problem is Robin. Their spectra
    // must still agree, which pins the sign convention of eta.
    auto sh = solve_spectrum_shooting(assemble_coefficients(model).problem(), 8);
    auto fd = solve_spectrum_fd(form.problem(), 8, FDOptions{0, 2, 1e-3});
    const double scale = sh.lambdas.back();
    for (int n = 0; n <= 8; ++n) CHECK_ABS(fd.lambdas[n], sh.lambdas[n], 2e-6 * scale);

    // Dual route on the Robin problem itself.
    auto shy = solve_spectrum_shooting(form.problem(), 8);
    for (int n = 0; n <= 8; ++n) CHECK_ABS(shy.lambdas[n], fd.lambdas[n], 1e-6 * scale);
}

TEST_CASE("liouville potential matches the Gaussian stiffness closed form") {
    // v = 1 makes y = x and v0 = 1; K = exp(beta x^2) then gives
    // qhat = beta + beta^2 y^2 and end log-slopes eta = beta y.
    SystemGeometry geom(1.0, 4097);
    const double beta = 0.4;
    std::vector<double> samples;
    for (double x : make_grid(geom)) samples.push_back(std::exp(beta * x * x));
    auto model = make_massless(geom, ProfileFn::constant(1.0),
                               ProfileFn::tabulated(samples, geom.L));
    auto form = liouville_transform(model);
    CHECK_REL(form.v0, 1.0, 1e-12);
    REQUIRE(form.y.size() == form.qhat.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < form.y.size(); ++i) {
        const double y = form.y[i];
        worst = std::max(worst, std::abs(form.qhat[i] - (beta + beta * beta * y * y)));
    }
    CHECK(worst <= 1e-6);
    CHECK_ABS(form.eta_right, beta * 0.5, 1e-6);
    CHECK_ABS(form.eta_left, -beta * 0.5, 1e-6);
    for (std::size_t i = 0; i < form.V.size(); ++i)
        CHECK(form.V[i] == form.qhat[i] / (form.v0 * form.v0));
}

TEST_CASE("stencil derivatives converge at their stated orders") {
    auto sample = [](int n, double& h) {
        h = 1.0 / (n - 1);
        std::vector<double> f;
        for (int i = 0; i < n; ++i) f.push_back(std::sin(2.0 * (i * h)));
        return f;
    };
    double h1, h2;
    auto f1 = sample(101, h1);
    auto f2 = sample(201, h2);
    auto d1 = uniform_second_derivative(f1, h1);
    auto d2 = uniform_second_derivative(f2, h2);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < d1.size(); ++i)
        e1 = std::max(e1, std::abs(d1[i] + 4.0 * std::sin(2.0 * (i * h1))));
    for (std::size_t i = 0; i < d2.size(); ++i)
        e2 = std::max(e2, std::abs(d2[i] + 4.0 * std::sin(2.0 * (i * h2))));
    // The max sits on the one-sided edge stencils, h^3 there.
    CHECK(e1 <= 5e-5);
    CHECK(e2 <= e1 / 6.0); // at least h^3 contraction under halving

    CHECK_ABS(uniform_end_derivative(f1, h1, true), 2.0, 1e-6);
    CHECK_ABS(uniform_end_derivative(f1, h1, false), 2.0 * std::cos(2.0), 1e-6);
}

TEST_CASE("shooting phase is monotone and hits the eigenvalue rungs") {
    SystemGeometry geom(1.0, 129);
    auto prob = assemble_coefficients(make_massless(geom, ProfileFn::constant(1.0),
                                                    ProfileFn::constant(1.0)))
                    .problem();
    // Free Neumann problem: the base angle is pi/2 and the n-th eigenvalue
    // sits at accumulated phase pi/2 + n pi.
    for (int n : {1, 3, 9}) {
        const double lam = pi * pi * n * n;
        // Phase error accumulates along the sweep, so scale with the total.
        CHECK_ABS(shooting_phase(prob, lam), 0.5 * pi + n * pi, 1e-7 * (1.0 + n));
    }
    const double p1 = shooting_phase(prob, 3.0);
    const double p2 = shooting_phase(prob, 30.0);
    const double p3 = shooting_phase(prob, 300.0);
    CHECK(p1 < p2);
    CHECK(p2 < p3);
}

TEST_CASE("eigenfunctions normalize, count nodes and alternate parity") {
    SystemGeometry geom(1.0, 257);
    auto prob = assemble_coefficients(make_massless(geom, ProfileFn::constant(1.0),
                                                    ProfileFn::constant(1.0)))
                    .problem();
    auto grid = make_grid(geom);
    const double h = geom.spacing();

    auto m0 = eigenfunction(prob, geom, 0.0, 0);
    CHECK(m0.zero_count == 0);
    CHECK(m0.parity == ParityClass::Even);
    for (double ui : m0.u) CHECK_REL(ui, 1.0, 1e-8); // 1/sqrt(L) with L = 1

    const double lam1 = pi * pi;
    auto m1 = eigenfunction(prob, geom, lam1, 1);
    CHECK(m1.zero_count == 1);
    CHECK(m1.parity == ParityClass::Odd);
    CHECK(m1.parity_defect <= 1e-8);
    CHECK(m1.u.front() > 0.0);
    CHECK(m1.U.front() == 0.0);
    // Closed form sqrt(2) cos(pi (x + 1/2)) with u > 0 at the left wall.
    for (std::size_t i = 0; i < grid.size(); i += 16)
        CHECK_ABS(m1.u[i], std::sqrt(2.0) * std::cos(pi * (grid[i] + 0.5)), 1e-8);
    // Unit weighted norm and zero total weight integral.
    std::vector<double> u2;
    for (double ui : m1.u) u2.push_back(ui * ui);
    CHECK_ABS(simpson(u2, h), 1.0, 1e-8);
    CHECK_ABS(m1.U.back(), 0.0, 1e-8);

    auto m4 = eigenfunction(prob, geom, pi * pi * 16.0, 4);
    CHECK(m4.zero_count == 4);
    CHECK(m4.parity == ParityClass::Even);
}

TEST_CASE("solver guard rails") {
    SystemGeometry geom(1.0, 129);
    auto prob = assemble_coefficients(make_massless(geom, ProfileFn::constant(1.0),
                                                    ProfileFn::constant(1.0)))
                    .problem();
    CHECK_THROWS_AS(solve_spectrum_fd(prob, -1), UsageError);
    CHECK_THROWS_AS(solve_spectrum_fd(prob, 4, FDOptions{0, 3, 1e-4}), UsageError);
    CHECK_THROWS_AS(solve_spectrum_fd(prob, 10, FDOptions{33, 1, 1e-4}), InsufficientModes);
}

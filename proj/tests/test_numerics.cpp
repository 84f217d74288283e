#include <doctest.h>

#include "testutil.hpp"

#include "pwt/errors.hpp"
#include "pwt/grid.hpp"
#include "pwt/interp.hpp"
#include "pwt/ode.hpp"
#include "pwt/quadrature.hpp"
#include "pwt/tridiag.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace pwt;

namespace {

constexpr double pi = std::numbers::pi;

// Integral of x^m over [-1, 1]: 0 for odd m, 2/(m+1) for even m.
double monomial_integral(int m) { return (m % 2 == 1) ? 0.0 : 2.0 / (m + 1); }

} // namespace

TEST_CASE("gauss_legendre integrates monomials exactly up to degree 2n-1") {
    auto rule = gauss_legendre(16);
    REQUIRE(rule.nodes.size() == 16);
    for (int m = 0; m <= 31; ++m) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * std::pow(rule.nodes[i], m);
        CHECK_ABS(s, monomial_integral(m), 1e-14);
    }
    // Degree 32 must NOT be exact: the rule is order 16, not magic.
    double s32 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s32 += rule.weights[i] * std::pow(rule.nodes[i], 32);
    CHECK(std::abs(s32 - monomial_integral(32)) > 1e-12);
}

TEST_CASE("gauss_legendre nodes are symmetric and weights positive") {
    for (int n : {8, 33, 128}) {
        auto rule = gauss_legendre(n);
        double wsum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            CHECK(rule.weights[i] > 0.0);
            wsum += rule.weights[i];
            CHECK_ABS(rule.nodes[i], -rule.nodes[rule.nodes.size() - 1 - i], 1e-15);
        }
        CHECK_ABS(wsum, 2.0, 1e-14);
    }
}

TEST_CASE("gauss_jacobi weight sums match Beta function values") {
    // sum w_i = integral over [-1,1] of (1-x)^a (1+x)^b dx = 2^(a+b+1) B(a+1, b+1).
    auto beta = [](double a, double b) {
        return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    };
    struct Case {
        double a, b;
    };
    for (auto [a, b] : {Case{-0.5, -0.5}, Case{0.5, 0.5}, Case{0.0, 0.5}, Case{1.0, 2.0}}) {
        auto rule = gauss_jacobi(24, a, b);
        double w0 = 0.0, w1 = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            w0 += rule.weights[i];
            w1 += rule.weights[i] * rule.nodes[i];
        }
        const double m0 = std::pow(2.0, a + b + 1.0) * beta(a + 1.0, b + 1.0);
        // First moment of the shifted Beta density: m1/m0 = (b-a)/(a+b+2).
        const double m1 = m0 * (b - a) / (a + b + 2.0);
        CHECK_REL(w0, m0, 1e-13);
        CHECK_ABS(w1, m1, std::abs(m0) * 1e-13);
    }
    // Chebyshev special case: a = b = -1/2 gives total weight pi.
    auto cheb = gauss_jacobi(12, -0.5, -0.5);
    double s = 0.0;
    for (double w : cheb.weights) s += w;
    CHECK_REL(s, pi, 1e-14);
}

TEST_CASE("integrate_adaptive reproduces closed forms") {
    double e1 = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK_REL(e1, std::exp(1.0) - 1.0, 1e-12);
    double at = integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0);
    CHECK_REL(at, pi / 4.0, 1e-12);
    // Oscillatory integrand with many sign changes across the panel tree.
    double osc = integrate_adaptive([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0);
    CHECK_ABS(osc, std::sin(40.0) / 40.0, 1e-12);
}

TEST_CASE("integrate_tanh_sinh handles inverse square root endpoints") {
    double s = integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK_REL(s, 2.0, 1e-12);
    double l = integrate_tanh_sinh([](double x) { return std::log(1.0 / x); }, 0.0, 1.0);
    CHECK_REL(l, 1.0, 1e-12);
    // Nonzero endpoints cap the accuracy: abscissa offsets below
    // eps * |endpoint| round onto the wall and their inverse-sqrt mass,
    // about sqrt(eps) relative, is unrepresentable in doubles. The [0, 1]
    // cases above dodge this because subnormals pack the zero endpoint.
    double w = integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, -1.0, 1.0);
    CHECK_REL(w, pi, 5e-8);
    double r = integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(2.0 - x); }, 1.0, 2.0);
    CHECK_REL(r, 2.0, 5e-8);
}

TEST_CASE("integrate_tanh_sinh agrees with adaptive on smooth integrands") {
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    double a = integrate_adaptive(f, 0.0, 2.0);
    double t = integrate_tanh_sinh(f, 0.0, 2.0);
    CHECK_REL(t, a, 1e-12);
}

TEST_CASE("integrate_ode solves exponential and oscillator to tight tolerance") {
    auto y = integrate_ode([](double, const double* s, double* d) { d[0] = s[0]; },
                           {1.0}, 0.0, 1.0);
    CHECK_REL(y[0], std::exp(1.0), 1e-10);

    auto z = integrate_ode([](double, const double* s, double* d) {
        d[0] = s[1];
        d[1] = -s[0];
    },
                           {1.0, 0.0}, 0.0, 10.0);
    CHECK_ABS(z[0], std::cos(10.0), 1e-9);
    CHECK_ABS(z[1], -std::sin(10.0), 1e-9);

    // Backward direction: exp integrated from 1 to 0.
    auto b = integrate_ode([](double, const double* s, double* d) { d[0] = s[0]; },
                           {1.0}, 1.0, 0.0);
    CHECK_REL(b[0], std::exp(-1.0), 1e-10);
}

TEST_CASE("integrate_ode_stops lands on every stop") {
    std::vector<double> stops{0.0, 0.25, 0.5, 1.0};
    std::vector<std::size_t> seen;
    integrate_ode_stops([](double x, const double*, double* d) { d[0] = 2.0 * x; },
                        {0.0}, stops,
                        [&](std::size_t i, const std::vector<double>& s) {
                            seen.push_back(i);
                            const double x = stops[i];
                            CHECK_ABS(s[0], x * x, 1e-10);
                        });
    REQUIRE(seen.size() == 4);
    CHECK(seen.front() == 0);
    CHECK(seen.back() == 3);
}

TEST_CASE("UniformInterp is exact on polynomials of its order") {
    // Cubic data on a uniform grid: order 3 reproduces it everywhere.
    const double x0 = -1.0, h = 0.25;
    std::vector<double> cube;
    for (int i = 0; i <= 8; ++i) {
        double x = x0 + i * h;
        cube.push_back(((x + 2.0) * x - 1.0) * x + 0.5);
    }
    UniformInterp c(cube, x0, h, 3);
    for (double x : {-0.93, -0.5, 0.0, 0.111, 0.77, 1.0}) {
        double exact = ((x + 2.0) * x - 1.0) * x + 0.5;
        double dexact = (3.0 * x + 4.0) * x - 1.0;
        CHECK_ABS(c.eval(x), exact, 1e-13);
        CHECK_ABS(c.deriv(x), dexact, 1e-11);
    }
    // Linear order reproduces affine data.
    std::vector<double> lin;
    for (int i = 0; i <= 8; ++i) lin.push_back(3.0 * (x0 + i * h) - 7.0);
    UniformInterp l(lin, x0, h, 1);
    CHECK_ABS(l.eval(0.37), 3.0 * 0.37 - 7.0, 1e-13);
    CHECK_THROWS_AS(UniformInterp(lin, x0, h, 2), InconsistentInput);
    CHECK_THROWS_AS(UniformInterp({1.0, 2.0, 3.0}, x0, h, 3), InconsistentInput);
}

TEST_CASE("UniformInterp evaluation commutes with reflection on symmetric data") {
    const double x0 = -2.0, h = 0.5;
    std::vector<double> sym;
    for (int i = 0; i <= 8; ++i) {
        double x = x0 + i * h;
        sym.push_back(std::cosh(x));
    }
    UniformInterp u(sym, x0, h, 3);
    for (double x : {0.13, 0.77, 1.31, 1.93}) {
        CHECK_REL(u.eval(x), u.eval(-x), 4e-16);
        // Rounding here is relative to the stencil terms (size max|f|/h),
        // not to the possibly small derivative itself.
        CHECK_ABS(u.deriv(x), -u.deriv(-x), 5e-14);
    }
}

TEST_CASE("interp_complex matches componentwise real interpolation") {
    const double x0 = 0.0, h = 0.1;
    std::vector<std::complex<double>> cs;
    std::vector<double> re, im;
    for (int i = 0; i <= 10; ++i) {
        double x = x0 + i * h;
        cs.emplace_back(std::sin(x), std::cos(2.0 * x));
        re.push_back(std::sin(x));
        im.push_back(std::cos(2.0 * x));
    }
    UniformInterp ur(re, x0, h, 3), ui(im, x0, h, 3);
    for (double x : {0.05, 0.33, 0.91}) {
        auto z = interp_complex(cs, x0, h, x);
        CHECK_ABS(z.real(), ur.eval(x), 1e-15);
        CHECK_ABS(z.imag(), ui.eval(x), 1e-15);
    }
}

TEST_CASE("MonotoneMap inverse round-trips and clamps outside the range") {
    const double x0 = 0.0, h = 0.1;
    std::vector<double> ys;
    for (int i = 0; i <= 20; ++i) {
        double x = x0 + i * h;
        ys.push_back(x + 0.3 * std::sin(x));
    }
    MonotoneMap m({}, x0, h, ys);
    for (double x : {0.05, 0.5, 1.234, 1.99}) CHECK_ABS(m.inverse(m.forward(x)), x, 1e-11);
    CHECK(m.inverse(m.y_min() - 1.0) == m.x_min());
    CHECK(m.inverse(m.y_max() + 1.0) == m.x_max());
    CHECK_THROWS_AS(MonotoneMap({}, 0.0, 1.0, std::vector<double>{0.0, 1.0, 0.5, 2.0}),
                    InconsistentInput);
}

TEST_CASE("make_grid is bitwise mirror symmetric with zero center") {
    SystemGeometry geom(3.7, 129);
    auto x = make_grid(geom);
    REQUIRE(x.size() == 129);
    CHECK(x[64] == 0.0);
    CHECK(x.front() == -0.5 * geom.L);
    CHECK(x.back() == 0.5 * geom.L);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == -x[x.size() - 1 - i]);
    CHECK_THROWS_AS(SystemGeometry(1.0, 128), InconsistentInput);
    CHECK_THROWS_AS(SystemGeometry(-1.0, 129), InconsistentInput);
}

TEST_CASE("simpson and cumulative_integral are exact on cubics") {
    const double h = 0.125;
    std::vector<double> s;
    for (int i = 0; i <= 16; ++i) {
        double x = i * h;
        s.push_back(x * x * x - 2.0 * x + 1.0);
    }
    const double b = 2.0;
    const double exact = b * b * b * b / 4.0 - b * b + b;
    CHECK_REL(simpson(s, h), exact, 1e-14);
    auto cum = cumulative_integral(s, h);
    CHECK(cum[0] == 0.0);
    CHECK_REL(cum.back(), exact, 1e-14);
    // Interior node: integral of the cubic from 0 to 1.
    CHECK_ABS(cum[8], 0.25 - 1.0 + 1.0, 1e-14);
    CHECK_THROWS_AS(simpson(std::vector<double>{1.0, 2.0}, h), InconsistentInput);
}

TEST_CASE("sturm_count brackets the 3x3 chain spectrum") {
    // diag {2,2,2}, off {-1,-1}: eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2).
    Tridiag T{{2.0, 2.0, 2.0}, {-1.0, -1.0}};
    const double r2 = std::sqrt(2.0);
    CHECK(sturm_count(T, 0.0) == 0);
    CHECK(sturm_count(T, 2.0 - r2 - 1e-12) == 0);
    CHECK(sturm_count(T, 2.0 - r2 + 1e-12) == 1);
    CHECK(sturm_count(T, 2.0 - 1e-12) == 1);
    CHECK(sturm_count(T, 2.0 + 1e-12) == 2);
    CHECK(sturm_count(T, 2.0 + r2 + 1e-12) == 3);
    CHECK(sturm_count(T, 100.0) == 3);

    auto ev = tridiag_eigenvalues(T, 2);
    REQUIRE(ev.size() == 3);
    CHECK_ABS(ev[0], 2.0 - r2, 1e-14);
    CHECK_ABS(ev[1], 2.0, 1e-14);
    CHECK_ABS(ev[2], 2.0 + r2, 1e-14);
}

TEST_CASE("free chain eigenvalues match the exact cosine formula") {
    // Finite volume chain for -u'' with natural boundary conditions: half
    // cells at the ends. Its matrix eigenvalues are exactly
    // (2 - 2 cos(j pi / (N-1))) / h^2 with cosine eigenvectors, no
    // discretization asterisk. A uniform diagonal once collapsed the
    // bisection onto 2/h^2, so this pins that regression at the size that
    // exposed it.
    const int N = 769;
    const double h = 1.0 / (N - 1);
    Tridiag T;
    T.diag.assign(N, 2.0 / h);
    T.diag.front() = 1.0 / h;
    T.diag.back() = 1.0 / h;
    T.off.assign(N - 1, -1.0 / h);
    std::vector<double> D(N, h);
    D.front() = 0.5 * h;
    D.back() = 0.5 * h;
    auto S = reduce_generalized(T, D);
    auto ev = tridiag_eigenvalues(S, 40);
    REQUIRE(ev.size() == 41);
    const double scale = 2.0 / (h * h);
    for (int j = 0; j <= 40; ++j) {
        const double exact = (2.0 - 2.0 * std::cos(j * pi / (N - 1))) / (h * h);
        CHECK_ABS(ev[j], exact, scale * 1e-13);
    }
    // The collapse value 2/h^2 sits mid-spectrum (it IS eigenvalue (N-1)/2).
    // Counts just beside it must flank that index; the broken pivot chain
    // returned 0 there, freezing every bracket.
    CHECK(sturm_count(S, scale * (1.0 - 1e-9)) == (N - 1) / 2);
    CHECK(sturm_count(S, scale * (1.0 + 1e-9)) == (N + 1) / 2);
}

TEST_CASE("tridiag error paths") {
    Tridiag T{{2.0, 2.0, 2.0}, {-1.0, -1.0}};
    CHECK_THROWS_AS(tridiag_eigenvalues(T, 3), InsufficientModes);
    CHECK_THROWS_AS(reduce_generalized(T, std::vector<double>{1.0, -1.0, 1.0}), PositivityError);
    CHECK_THROWS_AS(reduce_generalized(T, std::vector<double>{1.0, 1.0}), InconsistentInput);
}

#include <doctest.h>

#include "testutil.hpp"

#include "pwt/errors.hpp"
#include "pwt/gegenbauer.hpp"
#include "pwt/grid.hpp"
#include "pwt/model.hpp"
#include "pwt/pwt_check.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace pwt;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> tower(double T, int count, double shift, double stride = 1.0) {
    std::vector<double> e;
    for (int n = 0; n < count; ++n) e.push_back(pi / T * (stride * n + shift));
    return e;
}

} // namespace

TEST_CASE("detect_period recovers an exact gapless tower") {
    const double T0 = 0.73;
    auto det = detect_period(tower(T0, 16, 0.0));
    REQUIRE(det.found);
    CHECK_REL(det.T, T0, 1e-12);
    CHECK(det.c_shift == 0.0);
    CHECK(det.alternating);
    CHECK(det.max_defect <= 1e-12);
    REQUIRE(det.m.size() == 16);
    for (int n = 0; n < 16; ++n) CHECK(det.m[n] == n);
}

TEST_CASE("detect_period recovers a gapped tower with its shift") {
    const double T0 = 1.31;
    auto det = detect_period(tower(T0, 14, 2.0));
    REQUIRE(det.found);
    CHECK_REL(det.T, T0, 1e-12);
    CHECK(det.c_shift == 2.0);
    CHECK(det.alternating);
    for (int n = 0; n < 14; ++n) CHECK(det.m[n] == n + 2);
}

TEST_CASE("detect_period canonicalizes strided towers to the smallest period") {
    const double T0 = 0.9;
    // Energies pi 3n / T0 are equally the tower of T0/3 with labels n; the
    // ascending scan returns that minimal representative.
    auto d3 = detect_period(tower(T0, 12, 0.0, 3.0));
    REQUIRE(d3.found);
    CHECK_REL(d3.T, T0 / 3.0, 1e-12);
    for (int n = 0; n < 12; ++n) CHECK(d3.m[n] == n);

    auto d2 = detect_period(tower(T0, 12, 0.0, 2.0));
    REQUIRE(d2.found);
    CHECK_REL(d2.T, T0 / 2.0, 1e-12);
    for (int n = 0; n < 12; ++n) CHECK(d2.m[n] == n);
}

TEST_CASE("detect_period rejects a detuned level") {
    auto e = tower(0.8, 12, 0.0);
    e[3] *= 1.01;
    auto det = detect_period(e);
    CHECK_FALSE(det.found);

    CHECK_THROWS_AS(detect_period(std::vector<double>{0.0, 1.0, 2.0}), InsufficientModes);
    CHECK_THROWS_AS(detect_period(std::vector<double>(10, 0.0)), InconsistentInput);
}

TEST_CASE("classify_pwt accepts the half-circle channel") {
    SystemGeometry geom(1.0, 257);
    GegenbauerFamily fam{0.0, 1.0, 1.0, false};
    auto model = gegenbauer_model(fam, geom);
    auto spec = gegenbauer_spectrum(fam, geom, 24);
    auto modes = gegenbauer_modes(fam, geom, 24);
    auto rep = classify_pwt(model, spec, &modes);
    CHECK(rep.is_pwt);
    CHECK(rep.parity_ok);
    CHECK(rep.modes_parity_ok);
    CHECK(rep.spectrum_ok);
    CHECK(rep.condition_b);
    CHECK(rep.c_shift == 0.0);
    // T = L / v0 with v0 = 2 v_amp / pi.
    CHECK_REL(rep.T, 0.5 * pi, 1e-12);
}

TEST_CASE("classify_pwt rejects incommensurate power-law channels") {
    SystemGeometry geom(1.0, 257);
    for (double alpha : {0.5, 1.0}) {
        GegenbauerFamily fam{alpha, 1.0, 1.0, false};
        auto model = gegenbauer_model(fam, geom);
        auto spec = gegenbauer_spectrum(fam, geom, 24);
        auto rep = classify_pwt(model, spec, nullptr);
        CHECK(rep.parity_ok);
        CHECK_FALSE(rep.spectrum_ok);
        CHECK_FALSE(rep.is_pwt);
    }
}

TEST_CASE("classify_pwt accepts the fine-tuned massive channel") {
    SystemGeometry geom(1.0, 257);
    GegenbauerFamily fam{2.0, 1.0, 1.0, true};
    auto model = gegenbauer_model(fam, geom);
    auto spec = gegenbauer_spectrum(fam, geom, 20);
    auto rep = classify_pwt(model, spec, nullptr);
    CHECK(rep.is_pwt);
    CHECK(rep.spectrum_ok);
    CHECK(rep.c_shift == 2.0);
    CHECK_REL(rep.T, 0.5 * pi, 1e-12);

    // A gapped tower on a massless model is not transfer-perfect.
    auto massless = gegenbauer_model(GegenbauerFamily{2.0, 1.0, 1.0, false}, geom);
    auto rep2 = classify_pwt(massless, spec, nullptr);
    CHECK_FALSE(rep2.is_pwt);
}

TEST_CASE("classify_pwt rejects a shift beyond the admissible window") {
    SystemGeometry geom(1.0, 257);
    GegenbauerFamily fam{10.0, 1.0, 1.0, true};
    auto model = gegenbauer_model(fam, geom);
    auto spec = gegenbauer_spectrum(fam, geom, 20);
    auto rep = classify_pwt(model, spec, nullptr);
    CHECK_FALSE(rep.spectrum_ok);
    CHECK_FALSE(rep.is_pwt);
}

TEST_CASE("transfer time scales with amplitude and length") {
    SystemGeometry g1(1.0, 257), g2(2.0, 257);
    auto rep_amp = classify_pwt(gegenbauer_model(GegenbauerFamily{0.0, 2.0, 1.0, false}, g1),
                                gegenbauer_spectrum(GegenbauerFamily{0.0, 2.0, 1.0, false}, g1, 16),
                                nullptr);
    CHECK_REL(rep_amp.T, 0.25 * pi, 1e-12);
    auto rep_len = classify_pwt(gegenbauer_model(GegenbauerFamily{0.0, 1.0, 1.0, false}, g2),
                                gegenbauer_spectrum(GegenbauerFamily{0.0, 1.0, 1.0, false}, g2, 16),
                                nullptr);
    CHECK_REL(rep_len.T, pi, 1e-12);
}

TEST_CASE("classify_pwt requires even profiles") {
    SystemGeometry geom(1.0, 129);
    std::vector<double> asym;
    for (double x : make_grid(geom)) asym.push_back(std::exp(0.3 * x));
    auto model = make_massless(geom, ProfileFn::tabulated(asym, geom.L),
                               ProfileFn::constant(1.0));
    // Perfect tower, broken parity: the decision must still be negative.
    SLSpectrum spec;
    spec.lambdas.resize(16);
    spec.energies = tower(0.5, 16, 0.0);
    for (std::size_t i = 0; i < 16; ++i) spec.lambdas[i] = spec.energies[i] * spec.energies[i];
    auto rep = classify_pwt(model, spec, nullptr);
    CHECK(rep.spectrum_ok);
    CHECK_FALSE(rep.parity_ok);
    CHECK_FALSE(rep.is_pwt);
}

TEST_CASE("reflection witness separates perfect from imperfect channels") {
    SystemGeometry geom(1.0, 257);
    auto x = make_grid(geom);
    const double x_ref = x[192];

    GegenbauerFamily cheb{0.0, 1.0, 1.0, false};
    auto modes = gegenbauer_modes(cheb, geom, 64);
    auto spec = gegenbauer_spectrum(cheb, geom, 64);
    const double T = 0.5 * pi;
    CHECK(correlation_reflection_defect(modes, spec.energies, x, T, x_ref, 64) <= 1e-9);

    GegenbauerFamily leg{0.5, 1.0, 1.0, false};
    auto lmodes = gegenbauer_modes(leg, geom, 64);
    auto lspec = gegenbauer_spectrum(leg, geom, 64);
    CHECK(correlation_reflection_defect(lmodes, lspec.energies, x, T, x_ref, 64) >= 1e-2);

    CHECK_THROWS_AS(correlation_reflection_defect(modes, spec.energies, x, T, x_ref, 200),
                    InsufficientModes);
}

#include <doctest.h>

#include "testutil.hpp"

#include "pwt/errors.hpp"
#include "pwt/grid.hpp"
#include "pwt/model.hpp"
#include "pwt/profile.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

using namespace pwt;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> sample_on_grid(const SystemGeometry& geom, double (*f)(double)) {
    std::vector<double> s;
    for (double x : make_grid(geom)) s.push_back(f(x));
    return s;
}

} // namespace

TEST_CASE("profile evaluation matches closed forms") {
    const double L = 2.0;
    auto c = ProfileFn::constant(3.5);
    CHECK(c.eval(0.3, L) == 3.5);
    CHECK(c.deriv(-0.9, L) == 0.0);

    auto s = ProfileFn::sqrt_profile(2.0);
    for (double x : {-0.9, -0.25, 0.0, 0.5, 0.99}) {
        const double g = 1.0 - (2.0 * x / L) * (2.0 * x / L);
        CHECK_REL(s.eval(x, L), 2.0 * std::sqrt(g), 1e-14);
    }
    CHECK(s.eval(0.5 * L, L) == 0.0);
    CHECK(s.eval(-0.5 * L, L) == 0.0);

    auto p = ProfileFn::power_profile(1.5, 0.75);
    for (double x : {-0.6, 0.0, 0.8}) {
        const double g = 1.0 - (2.0 * x / L) * (2.0 * x / L);
        CHECK_REL(p.eval(x, L), 1.5 * std::pow(g, 0.75), 1e-14);
    }

    auto cs = ProfileFn::cosine_series({1.0, 0.25, -0.125});
    for (double x : {-0.7, 0.1, 0.93}) {
        const double want = 1.0 + 0.25 * std::cos(pi * x / L) - 0.125 * std::cos(2.0 * pi * x / L);
        CHECK_REL(cs.eval(x, L), want, 1e-14);
    }
}

TEST_CASE("profile derivatives agree with central differences") {
    const double L = 1.7;
    const double h = 1e-6;
    std::vector<ProfileFn> ps{ProfileFn::sqrt_profile(1.3), ProfileFn::power_profile(0.8, 1.25),
                              ProfileFn::cosine_series({1.0, -0.3, 0.0, 0.07})};
    for (const auto& p : ps) {
        for (double x : {-0.5, -0.11, 0.0, 0.37, 0.6}) {
            const double fd = (p.eval(x + h, L) - p.eval(x - h, L)) / (2.0 * h);
            CHECK_ABS(p.deriv(x, L), fd, 1e-7 * (1.0 + std::abs(fd)));
        }
    }
    // Tabulated derivative from the cubic stencil.
    SystemGeometry geom(1.7, 257);
    auto tab = ProfileFn::tabulated(sample_on_grid(geom, [](double x) { return std::exp(x); }),
                                    geom.L, 3);
    CHECK_ABS(tab.deriv(0.21, L), std::exp(0.21), 1e-6);
}

TEST_CASE("scaled preserves kind and scales exactly") {
    const double L = 3.0;
    auto s = ProfileFn::sqrt_profile(2.0).scaled(0.5);
    CHECK(s.kind() == ProfileKind::SqrtProfile);
    CHECK(s.eval(0.4, L) == ProfileFn::sqrt_profile(1.0).eval(0.4, L));

    auto cs = ProfileFn::cosine_series({1.0, 0.5}).scaled(-2.0);
    CHECK(cs.kind() == ProfileKind::CosineSeries);
    CHECK(cs.eval(0.7, L) == -2.0 * ProfileFn::cosine_series({1.0, 0.5}).eval(0.7, L));

    SystemGeometry geom(3.0, 65);
    auto tab = ProfileFn::tabulated(sample_on_grid(geom, [](double x) { return 2.0 + x; }), geom.L);
    auto tab2 = tab.scaled(3.0);
    CHECK(tab2.kind() == ProfileKind::Tabulated);
    CHECK_REL(tab2.eval(0.123, L), 3.0 * tab.eval(0.123, L), 1e-15);
}

TEST_CASE("tabulated profiles reproduce their samples at the nodes") {
    SystemGeometry geom(2.4, 33);
    auto grid = make_grid(geom);
    std::vector<double> samples;
    for (double x : grid) samples.push_back(1.0 + 0.2 * std::sin(3.0 * x));
    auto tab = ProfileFn::tabulated(samples, geom.L);
    // Node evaluation goes through the cubic stencil; the right-half grid
    // nodes pick up an ulp of index rounding, so exactness is to rounding.
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK_ABS(tab.eval(grid[i], geom.L), samples[i], 1e-14);
    CHECK(tab.kind() == ProfileKind::Tabulated);
    CHECK_FALSE(tab.structurally_even());
    CHECK(ProfileFn::cosine_series({1.0, 0.1}).structurally_even());
}

TEST_CASE("domain is enforced with a small slack") {
    const double L = 2.0;
    auto c = ProfileFn::constant(1.0);
    CHECK_NOTHROW(c.eval(0.5 * L, L));
    CHECK_NOTHROW(c.eval(0.5 * L + 1e-13 * L, L));
    CHECK_THROWS_AS(c.eval(0.5 * L + 1e-9, L), DomainError);
    CHECK_THROWS_AS(c.deriv(-0.5 * L - 1e-9, L), DomainError);
}

TEST_CASE("parity_check classifies structural and sampled parity") {
    SystemGeometry geom(2.0, 129);
    auto even = parity_check(ProfileFn::cosine_series({1.0, 0.3, -0.1}), geom);
    CHECK(even.cls == ParityClass::Even);
    CHECK(even.defect_even == 0.0);

    // Odd sampled data: defect_odd vanishes, defect_even does not.
    auto odd = parity_check(
        ProfileFn::tabulated(sample_on_grid(geom, [](double x) { return std::sin(x); }), geom.L),
        geom);
    CHECK(odd.cls == ParityClass::Odd);
    CHECK(odd.defect_odd <= 1e-15);
    CHECK(odd.defect_even > 0.1);

    auto neither = parity_check(
        ProfileFn::tabulated(sample_on_grid(geom, [](double x) { return std::exp(x); }), geom.L),
        geom);
    CHECK(neither.cls == ParityClass::Neither);
    CHECK(neither.defect_even > 1e-2);
    CHECK(neither.defect_odd > 1e-2);

    // Even sampled data classifies evenly because the grid mirrors bitwise.
    auto tabeven = parity_check(
        ProfileFn::tabulated(sample_on_grid(geom, [](double x) { return std::cosh(x); }), geom.L),
        geom);
    CHECK(tabeven.cls == ParityClass::Even);
}

TEST_CASE("eval_strict_positive flags wall zeros by name") {
    const double L = 2.0;
    auto s = ProfileFn::sqrt_profile(1.0);
    CHECK(eval_strict_positive(s, 0.0, L, "v") == 1.0);
    try {
        eval_strict_positive(s, 0.5 * L, L, "v");
        FAIL("expected SingularValue");
    } catch (const SingularValue& e) {
        CHECK(std::string(e.what()).find("v") != std::string::npos);
    }
}

TEST_CASE("describe names every profile kind") {
    SystemGeometry geom(1.0, 33);
    for (const auto& p :
         {ProfileFn::constant(1.0), ProfileFn::sqrt_profile(1.0), ProfileFn::power_profile(1.0, 0.5),
          ProfileFn::cosine_series({1.0, 0.1}),
          ProfileFn::tabulated(sample_on_grid(geom, [](double) { return 1.0; }), geom.L)}) {
        CHECK_FALSE(p.describe().empty());
    }
}

TEST_CASE("regularity classification trichotomy") {
    SystemGeometry geom(2.0, 129);
    auto flat = ProfileFn::constant(1.0);

    // Everything smooth and flat at the seams.
    CHECK(regularity_classify(make_massless(geom, flat, ProfileFn::cosine_series({1.5, 0.0, 0.2}))) ==
          Regularity::Regular);

    // Vanishing endpoint value.
    CHECK(regularity_classify(make_massless(geom, ProfileFn::sqrt_profile(1.0), flat)) ==
          Regularity::IrregularEndpoint);
    CHECK(regularity_classify(make_massless(geom, flat, ProfileFn::power_profile(1.0, 1.0))) ==
          Regularity::IrregularEndpoint);

    // Positive endpoint but nonzero seam slope: odd harmonic of cos(k pi x / L).
    CHECK(regularity_classify(make_massless(geom, ProfileFn::cosine_series({2.0, 0.3}), flat)) ==
          Regularity::IrregularAfterUnfolding);

    // A q term with a seam slope also breaks regularity.
    auto m = make_with_q(geom, flat, flat, ProfileFn::cosine_series({0.1, 0.05}));
    CHECK(regularity_classify(m) == Regularity::IrregularAfterUnfolding);
}

TEST_CASE("model constructors enforce positivity and record conventions") {
    SystemGeometry geom(2.0, 65);
    auto flat = ProfileFn::constant(1.0);

    auto m0 = make_massless(geom, flat, flat);
    CHECK(m0.mass_convention == MassConvention::None);
    CHECK_FALSE(m0.q.has_value());
    CHECK(mass_convention_defect(m0) == 0.0);

    auto mq = make_with_q(geom, flat, flat, ProfileFn::constant(-0.3));
    CHECK(mq.mass_convention == MassConvention::DirectQ);
    CHECK(mass_convention_defect(mq) == 0.0);

    auto mm = make_with_mass(geom, ProfileFn::cosine_series({1.0, 0.0, 0.1}), flat, 0.7);
    CHECK(mm.mass_convention == MassConvention::ViaMass);
    REQUIRE(mm.q.has_value());
    // q is a scaled copy of v; the defect probe re-rounds the products, so
    // consistency holds to machine precision rather than bitwise.
    CHECK(mass_convention_defect(mm) <= 1e-15);
    CHECK(mm.q->eval(0.3, geom.L) < 0.0);

    // With a constant v the scaled copy is a single product: defect is zero.
    auto mc = make_with_mass(geom, flat, flat, 0.7);
    CHECK(mass_convention_defect(mc) == 0.0);

    // Interior zero crossing rejected at construction.
    auto bad = sample_on_grid(geom, [](double x) { return x; });
    CHECK_THROWS_AS(make_massless(geom, ProfileFn::tabulated(bad, geom.L), flat), PositivityError);
}

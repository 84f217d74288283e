#include "pwt/model.hpp"

#include "pwt/coordinate_map.hpp"
#include "pwt/errors.hpp"

#include <cmath>

namespace pwt {

namespace {

// Strict positivity on the open interval; endpoint behaviour is left to the
// regularity classification.
void validate_positive_interior(const ProfileFn& p, const SystemGeometry& geom, const char* name) {
    const std::vector<double> x = make_grid(geom);
    for (int i = 1; i + 1 < geom.grid_points; ++i) {
        const double val = p.eval(x[i], geom.L);
        if (!std::isfinite(val) || val <= 0.0)
            throw PositivityError(std::string(name) + " not strictly positive inside the interval");
    }
}

} // namespace

TLLModel make_massless(const SystemGeometry& geom, ProfileFn v, ProfileFn K) {
    validate_positive_interior(v, geom, "v");
    validate_positive_interior(K, geom, "K");
    TLLModel m;
    m.geometry = geom;
    m.v = std::move(v);
    m.K = std::move(K);
    return m;
}

TLLModel make_with_q(const SystemGeometry& geom, ProfileFn v, ProfileFn K, ProfileFn q) {
    TLLModel m = make_massless(geom, std::move(v), std::move(K));
    m.q = std::move(q);
    m.mass_convention = MassConvention::DirectQ;
    return m;
}

TLLModel make_with_mass(const SystemGeometry& geom, ProfileFn v, ProfileFn K, double mu) {
    TLLModel m = make_massless(geom, std::move(v), std::move(K));
    const double v0 = coordinate_map(m.v, geom).v0;
    m.q = m.v.scaled(-v0 * v0 * mu * mu);
    m.mass = ProfileFn::constant(mu);
    m.mass_convention = MassConvention::ViaMass;
    return m;
}

double mass_convention_defect(const TLLModel& model) {
    if (model.mass_convention != MassConvention::ViaMass || !model.mass || !model.q) return 0.0;
    const double v0 = coordinate_map(model.v, model.geometry).v0;
    const std::vector<double> x = make_grid(model.geometry);
    double defect = 0.0, scale = 0.0;
    for (double xi : x) {
        const double mu = model.mass->eval(xi, model.geometry.L);
        const double expect = -v0 * v0 * mu * mu * model.v.eval(xi, model.geometry.L);
        const double got = model.q->eval(xi, model.geometry.L);
        defect = std::max(defect, std::abs(got - expect));
        scale = std::max(scale, std::abs(expect));
    }
    return scale > 0.0 ? defect / scale : defect;
}

Regularity regularity_classify(const TLLModel& model) {
    const double L = model.geometry.L;
    auto endpoint_ok = [&](const ProfileFn& p) {
        for (double e : {-0.5 * L, 0.5 * L}) {
            const double val = p.eval(e, L);
            if (!std::isfinite(val) || val <= 0.0) return false;
        }
        return true;
    };
    if (!endpoint_ok(model.v) || !endpoint_ok(model.K)) return Regularity::IrregularEndpoint;
    if (model.q) {
        for (double e : {-0.5 * L, 0.5 * L})
            if (!std::isfinite(model.q->eval(e, L))) return Regularity::IrregularEndpoint;
    }

    // Even reflection at the seam keeps the unfolded potential differentiable
    // iff the one-sided first derivatives vanish there. Closed forms give the
    // derivative exactly; tabulated data gets an h^2-aware threshold.
    auto seam_flat = [&](const ProfileFn& p) {
        double scale = 1e-300;
        const std::vector<double> x = make_grid(model.geometry);
        for (double xi : x) scale = std::max(scale, std::abs(p.eval(xi, L)));
        const double h = model.geometry.spacing();
        const double tol = (p.kind() == ProfileKind::Tabulated)
                               ? std::max(1e-9, 100.0 * (h / L) * (h / L)) * scale / L
                               : 1e-9 * scale / L;
        for (double e : {-0.5 * L, 0.5 * L})
            if (std::abs(p.deriv(e, L)) > tol) return false;
        return true;
    };
    bool flat = seam_flat(model.v) && seam_flat(model.K);
    if (flat && model.q) flat = seam_flat(*model.q);
    return flat ? Regularity::Regular : Regularity::IrregularAfterUnfolding;
}

} // namespace pwt

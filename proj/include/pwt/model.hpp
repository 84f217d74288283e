#ifndef PWT_MODEL_HPP
#define PWT_MODEL_HPP

#include "pwt/grid.hpp"
#include "pwt/profile.hpp"

#include <optional>

namespace pwt {

enum class MassConvention { None, DirectQ, ViaMass };

enum class Regularity { Regular, IrregularEndpoint, IrregularAfterUnfolding };

// A channel: velocity v(x), interaction K(x), optional mass-like term q(x).
// v and K must be strictly positive on the open interval; q is unconstrained
// in sign. When built via a mass profile M, q = -v0^2 M^2 v exactly.
struct TLLModel {
    SystemGeometry geometry;
    ProfileFn v = ProfileFn::constant(1.0);
    ProfileFn K = ProfileFn::constant(1.0);
    std::optional<ProfileFn> q;
    std::optional<ProfileFn> mass;
    MassConvention mass_convention = MassConvention::None;
};

TLLModel make_massless(const SystemGeometry& geom, ProfileFn v, ProfileFn K);
TLLModel make_with_q(const SystemGeometry& geom, ProfileFn v, ProfileFn K, ProfileFn q);
// Constant mass mu: q is a scaled copy of v (consistent to rounding).
TLLModel make_with_mass(const SystemGeometry& geom, ProfileFn v, ProfileFn K, double mu);

// Consistency of the stored q with the generating mass term, max over nodes.
double mass_convention_defect(const TLLModel& model);

// Endpoint behaviour drives the classification; interior positivity failures
// are construction errors, not classifications. The seam test asks whether
// reflecting the profiles at x = +-L/2 keeps first derivatives matched, the
// condition for the unfolded potential to stay differentiable.
Regularity regularity_classify(const TLLModel& model);

} // namespace pwt

#endif

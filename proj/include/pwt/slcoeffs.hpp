#ifndef PWT_SLCOEFFS_HPP
#define PWT_SLCOEFFS_HPP

#include "pwt/coordinate_map.hpp"
#include "pwt/model.hpp"

#include <functional>
#include <vector>

namespace pwt {

enum class BCKind { Neumann, Robin };

// Abstract eigenproblem -(1/w)[(p u')' + q u] = lambda u on [-L/2, L/2].
// Boundary conditions: u'(-L/2) = eta_left * u, u'(L/2) = eta_right * u
// (eta = 0 is Neumann). Solvers consume this interface; the model-facing
// wrapper and the Liouville form both produce it.
struct SLProblem {
    std::function<double(double)> w, p, q;
    double L = 1.0;
    BCKind bc = BCKind::Neumann;
    double eta_left = 0.0;
    double eta_right = 0.0;
    bool q_is_zero = true; // structural: guarantees lambda_0 = 0 under Neumann
};

// Sturm-Liouville coefficients of a channel: w = K/v (weight), p = v*K
// (stiffness), q carried through. w*p = K^2 and p/w = v^2 identically.
struct SLCoefficients {
    SystemGeometry geometry;
    ProfileFn v = ProfileFn::constant(1.0);
    ProfileFn K = ProfileFn::constant(1.0);
    std::optional<ProfileFn> q;

    double w(double x) const;
    double p(double x) const;
    double q_at(double x) const;

    SLProblem problem() const;
};

// Validates strict positivity of w and p on the open interval.
SLCoefficients assemble_coefficients(const TLLModel& model);

// Potential form: -v0^2 u'' + qhat u = lambda u on the stretched coordinate,
// qhat(y) = -q/w + v0^2 (d^2/dy^2 sqrt(K)) / sqrt(K).
struct LiouvilleForm {
    double v0 = 1.0;
    double L = 1.0;
    std::vector<double> y;            // uniform grid in the stretched coordinate
    std::vector<double> qhat;         // potential samples
    std::vector<double> V;            // qhat / v0^2
    double deriv_error_estimate = 0.0;
    // Transformed boundary conditions: the stretched-coordinate eigenfunction
    // obeys u'(+-L/2) = eta * u with eta = (d sqrt(K)/dy) / sqrt(K) at the
    // end. Both vanish iff K has flat ends.
    double eta_left = 0.0;
    double eta_right = 0.0;
    CoordinateMap map;

    SLProblem problem() const;        // w = 1/v0^2, p = 1, q = -qhat/v0^2
};

// Throws DifferentiationNoise when the grid-halving error estimate of the
// numerical second derivative exceeds 1e-4 * max |qhat|.
LiouvilleForm liouville_transform(const TLLModel& model);

// Stencil derivatives of uniformly sampled data: centered O(h^4) interior,
// one-sided O(h^3) at the edges.
std::vector<double> uniform_second_derivative(const std::vector<double>& f, double h);
// One-sided O(h^4) first derivative at the left (or right) edge sample.
double uniform_end_derivative(const std::vector<double>& f, double h, bool left);

} // namespace pwt

#endif

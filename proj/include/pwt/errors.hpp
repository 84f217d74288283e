#ifndef PWT_ERRORS_HPP
#define PWT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pwt {

// All library failures derive from Error so callers can map them to a single
// exit path. The leaf types mirror the failure modes of each module.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the profile's domain [-L/2, L/2].
struct DomainError : Error { using Error::Error; };
// Profile evaluates to zero or negative where strict positivity is required.
struct SingularValue : Error { using Error::Error; };
// 1/v fails the endpoint-convergence heuristic; no finite mean velocity.
struct DivergentV0 : Error { using Error::Error; };
// Adaptive quadrature hit its subdivision limit above tolerance.
struct QuadratureFailure : Error { using Error::Error; };
// Assembled coefficient w or p not strictly positive on the open interval.
struct PositivityError : Error { using Error::Error; };
// Numerical second derivative too noisy for a trustworthy Liouville potential.
struct DifferentiationNoise : Error { using Error::Error; };
// Eigenvalue extrapolation error estimate exceeds the requested tolerance.
struct ConvergenceError : Error { using Error::Error; };
// Phase function failed to bracket the requested eigenvalue index.
struct BracketError : Error { using Error::Error; };
// ODE step size collapsed below L*1e-12.
struct StiffnessError : Error { using Error::Error; };
// Eigenfunction norm vanished; cannot normalize.
struct NormalizationError : Error { using Error::Error; };
// Too few spectrum entries for the requested analysis.
struct InsufficientModes : Error { using Error::Error; };
// Structurally inconsistent model or request.
struct InconsistentInput : Error { using Error::Error; };
// Semiclassical phase requested at Lambda <= max V.
struct TurningPointError : Error { using Error::Error; };
// Scaling weights make the coincidence limit non-integrable.
struct NonIntegrableWeights : Error { using Error::Error; };
// K-recovery ODE solution crossed zero; K = s^2 would vanish.
struct SignChange : Error { using Error::Error; };
// Levenberg-Marquardt damping exceeded 1e12 without a decrease.
struct DivergedFit : Error { using Error::Error; };
// Jacobian condition number above 1e12.
struct RankDeficient : Error { using Error::Error; };
// Bad command-line flags.
struct UsageError : Error { using Error::Error; };
// Malformed input file (config or CSV).
struct InputError : Error { using Error::Error; };

} // namespace pwt

#endif

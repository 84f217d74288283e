#ifndef PWT_GEGENBAUER_HPP
#define PWT_GEGENBAUER_HPP

#include "pwt/model.hpp"
#include "pwt/spectrum.hpp"

#include <vector>

namespace pwt {

// Half-circle velocity with a power-law stiffness over the same window:
//   v = v_amp sqrt(1 - (2x/L)^2),  K = K_amp (1 - (2x/L)^2)^alpha.
// The massive variant adds the fine-tuned q = -(2 v_amp alpha / L)^2 w,
// which shifts every eigenvalue by the same amount and keeps the
// eigenfunctions; it requires alpha to be a positive even integer.
struct GegenbauerFamily {
    double alpha = 0.0;
    double v_amp = 1.0;
    double K_amp = 1.0;
    bool massive = false;
};

TLLModel gegenbauer_model(const GegenbauerFamily& fam, const SystemGeometry& geom);

// lambda_n = (pi v0 / L)^2 n (n + 2 alpha), shifted to (pi v0 / L)^2 (n + alpha)^2
// in the massive variant; v0 = 2 v_amp / pi.
SLSpectrum gegenbauer_spectrum(const GegenbauerFamily& fam, const SystemGeometry& geom,
                               int n_max);

// Polynomial eigenfunctions, weight-normalized by Gauss-Jacobi quadrature.
std::vector<EigenMode> gegenbauer_modes(const GegenbauerFamily& fam,
                                        const SystemGeometry& geom, int n_max);

// C_n^(alpha) at s, degenerating to the first-kind Chebyshev polynomial at
// alpha = 0 (the classical limit of the normalized family).
double gegenbauer_poly(int n, double alpha, double s);

} // namespace pwt

#endif

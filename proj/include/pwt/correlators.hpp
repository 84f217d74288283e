#ifndef PWT_CORRELATORS_HPP
#define PWT_CORRELATORS_HPP

#include "pwt/spectrum.hpp"
#include "pwt/unfold.hpp"

#include <complex>
#include <vector>

namespace pwt {

using cdouble = std::complex<double>;

// Image-summed half-line kernel, 2L-periodic in x:
//   G+(x) = i pi exp(-i pi x / 2L) / (2L sin(pi (x + i eps) / 2L))
// G-(x) = G+(-x) = conj(G+(x)) for real x.
cdouble kernel_plus(double x, double eps, double L);
cdouble kernel_minus(double x, double eps, double L);
// Truncated mode expansion of the same kernel (test oracle):
//   (pi/L) sum_{m>=0} exp(i pi m x / L) exp(-(2m+1) pi eps / 2L)
cdouble kernel_plus_series(double x, double eps, double L, int m_max);

// Truncated oscillator sum with explicit spectral damping exp(-eps E_n / v0).
struct SeriesResult {
    cdouble value{0.0, 0.0};
    double tail = 0.0;   // geometric estimate of the dropped remainder
    bool converged = false;
};

// Two-point functions of the field, its dual, and the mixed pair, evaluated
// at grid indices i, ip with time separation dt. Mode n = 0 is skipped when
// gapless (it carries no oscillator).
SeriesResult phi_phi_series(const std::vector<EigenMode>& modes,
                            const std::vector<double>& energies, std::size_t i,
                            std::size_t ip, double dt, double eps, double v0, int n_modes);
SeriesResult phi_theta_series(const std::vector<EigenMode>& modes,
                              const std::vector<double>& energies, std::size_t i,
                              std::size_t ip, double dt, double eps, double v0, int n_modes);
SeriesResult theta_theta_series(const std::vector<EigenMode>& modes,
                                const std::vector<double>& energies, std::size_t i,
                                std::size_t ip, double dt, double eps, double v0, int n_modes);

// Closed form of the field correlator for even profiles, through the
// unfolded coordinate. Warns through the returned flag when an argument sits
// within 1e-12 of a kernel branch cut.
struct ClosedFormResult {
    cdouble value{0.0, 0.0};
    bool near_branch_cut = false;
};
ClosedFormResult phi_phi_closed(const UnfoldedMap& um, double x, double t, double xp,
                                double tp, double eps);

} // namespace pwt

#endif

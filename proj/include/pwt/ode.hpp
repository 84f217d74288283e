#ifndef PWT_ODE_HPP
#define PWT_ODE_HPP

#include <functional>
#include <vector>

namespace pwt {

struct ODEOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    double min_step_frac = 1e-12; // of the integration span; below it: StiffnessError
};

using ODERhs = std::function<void(double x, const double* y, double* dy)>;

// Dormand-Prince 5(4) adaptive step from x0 to x1 (either direction).
// Returns y(x1). Throws StiffnessError when the controller collapses the
// step below min_step_frac * |x1 - x0|.
std::vector<double> integrate_ode(const ODERhs& f, std::vector<double> y,
                                  double x0, double x1, const ODEOptions& opts = {});

// Same integrator, landing exactly on each ascending stop point; cb receives
// (stop index, state). stops must begin at the initial point x0.
void integrate_ode_stops(const ODERhs& f, std::vector<double> y,
                         const std::vector<double>& stops,
                         const std::function<void(std::size_t, const std::vector<double>&)>& cb,
                         const ODEOptions& opts = {});

} // namespace pwt

#endif

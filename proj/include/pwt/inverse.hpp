#ifndef PWT_INVERSE_HPP
#define PWT_INVERSE_HPP

#include "pwt/coordinate_map.hpp"
#include "pwt/model.hpp"
#include "pwt/pwt_check.hpp"
#include "pwt/spectrum.hpp"

#include <functional>
#include <vector>

namespace pwt {

// Damped Gauss-Newton with forward-difference Jacobian (columns evaluated
// concurrently), Marquardt scaling, and an optional Tikhonov term.
struct LevMarOptions {
    int max_iters = 60;
    double tol = 1e-12;      // stop when the residual norm decrease falls below this
    double tikhonov = 0.0;   // rho ||c||^2 added to the objective
    double lambda_init = 1e-3;
    double fd_step = 1e-6;   // forward-difference step, scaled by max(1, |c_k|)
};

struct IterRecord {
    int iter = 0;
    double rnorm = 0.0;
    double lambda = 0.0;
    std::vector<double> c;
};

struct LevMarResult {
    std::vector<double> params;
    double rnorm = 0.0;
    std::vector<IterRecord> trace;
    double cond_estimate = 0.0; // of the last Jacobian
    bool converged = false;
};

// Throws DivergedFit when the damping exceeds 1e12 and RankDeficient when
// the Jacobian condition estimate exceeds 1e12.
LevMarResult levmar(const std::function<std::vector<double>(const std::vector<double>&)>& f,
                    std::vector<double> c0, const LevMarOptions& opts = {});

// Inverse problem: given a target tower and the (even) velocity, fit the
// even potential qhat(y) = sum_k c_k cos(2 pi k y / L) whose channel
// reproduces the tower, then rebuild the stiffness profile.
struct InverseProblem {
    std::vector<double> target_energies; // E_0..E_N, ascending, E_0 = 0
    ProfileFn v = ProfileFn::constant(1.0);
    SystemGeometry geometry;
    int basis_size = 6;
    double tikhonov = 0.0;
    double K0 = 1.0;
};

struct InverseOptions {
    LevMarOptions lm;
    int fit_points = 769;     // FD resolution inside the loop
    int polish_points = 4097; // final high-resolution pass
    int polish_iters = 2;
};

double qhat_basis_eval(const std::vector<double>& c, double L, double y);

// Forward spectral map of the fit: the potential-form problem on the
// stretched coordinate with the end conditions induced by the stiffness
// gauge factor (solved from v0^2 s'' = qhat s), so the ground level sits at
// zero exactly and the map is isospectral to the physical channel.
SLSpectrum inverse_forward_spectrum(const std::vector<double>& c, double v0,
                                    const SystemGeometry& geom, int n_max, int base_points);

struct FitResult {
    std::vector<double> coefficients;
    std::vector<double> qhat_fit; // samples on the uniform stretched grid
    double residual_norm = 0.0;
    std::vector<IterRecord> trace;
    double cond_estimate = 0.0;
};

FitResult fit_qhat(const InverseProblem& prob, const InverseOptions& opts = {});

struct RecoveredK {
    ProfileFn K = ProfileFn::constant(1.0);
    std::vector<double> s_samples; // gauge factor on the stretched grid
    double bc_defect = 0.0;        // |s'(+-L/2)|
    bool positivity_ok = false;
};

// Integrates v0^2 s'' = qhat s outward from the center with s(0) = sqrt(K0),
// s'(0) = 0, and maps K = s^2 back to the physical coordinate. Throws
// SignChange when s crosses zero.
RecoveredK recover_K(const std::vector<double>& qhat, const CoordinateMap& map, double K0);

struct ReconstructionResult {
    FitResult fit;
    RecoveredK recovered;
    double spectral_residual = 0.0; // rms relative error over n >= 1
};

ReconstructionResult reconstruct(const InverseProblem& prob, const InverseOptions& opts = {});

struct RoundTripReport {
    std::vector<double> rel_errors; // per mode, n >= 1
    double max_rel_error = 0.0;
    PWTReport pwt;
};

// Independent check in the physical coordinate: shooting spectrum of the
// reassembled channel against the target tower.
RoundTripReport roundtrip_validate(const ReconstructionResult& result,
                                   const InverseProblem& prob, int n_check);

} // namespace pwt

#endif

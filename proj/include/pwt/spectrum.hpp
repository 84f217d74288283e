#ifndef PWT_SPECTRUM_HPP
#define PWT_SPECTRUM_HPP

#include "pwt/profile.hpp"

#include <string>
#include <vector>

namespace pwt {

enum class SpectrumMethod { FiniteDifference, Shooting, ClosedForm };

const char* spectrum_method_name(SpectrumMethod m);

struct SLSpectrum {
    std::vector<double> lambdas;   // ascending, index n = 0..n_max
    std::vector<double> energies;  // sqrt(lambda)
    std::vector<double> errors;    // absolute error estimates per eigenvalue
    SpectrumMethod method = SpectrumMethod::FiniteDifference;
};

// sqrt with a roundoff clamp at zero; throws InconsistentInput when a
// genuinely negative eigenvalue appears (scale sets the clamp window).
std::vector<double> energies_from_lambdas(const std::vector<double>& lambdas, double scale);

struct EigenMode {
    int n = 0;
    double lambda = 0.0;
    std::vector<double> u; // samples on the shared spatial grid
    std::vector<double> U; // cumulative weight integral of u, zero at the left wall
    int zero_count = 0;
    ParityClass parity = ParityClass::Neither;
    double parity_defect = 0.0;
};

// Sign changes across consecutive samples, ignoring magnitudes below
// drop_tol * max |u| (guards noise near grid zeros).
int count_sign_changes(const std::vector<double>& u, double drop_tol = 1e-9);

} // namespace pwt

#endif

#include "pwt/spectrum.hpp"

#include "pwt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pwt {

const char* spectrum_method_name(SpectrumMethod m) {
    switch (m) {
    case SpectrumMethod::FiniteDifference: return "fd";
    case SpectrumMethod::Shooting: return "shooting";
    case SpectrumMethod::ClosedForm: return "closed-form";
    }
    return "unknown";
}

std::vector<double> energies_from_lambdas(const std::vector<double>& lambdas, double scale) {
    std::vector<double> out(lambdas.size());
    const double clamp = 1e-8 * std::abs(scale);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        double lam = lambdas[i];
        if (lam < 0.0) {
            if (lam < -clamp)
                throw InconsistentInput("negative eigenvalue " + std::to_string(lam)
                                        + " exceeds the roundoff window");
            lam = 0.0;
        }
        out[i] = std::sqrt(lam);
    }
    return out;
}

int count_sign_changes(const std::vector<double>& u, double drop_tol) {
    double umax = 0.0;
    for (double s : u) umax = std::max(umax, std::abs(s));
    if (umax == 0.0) return 0;
    const double floor = drop_tol * umax;
    int changes = 0;
    double prev = 0.0;
    for (double s : u) {
        if (std::abs(s) <= floor) continue;
        if (prev != 0.0 && ((s > 0.0) != (prev > 0.0))) ++changes;
        prev = s;
    }
    return changes;
}

} // namespace pwt

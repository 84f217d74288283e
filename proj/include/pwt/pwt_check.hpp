#ifndef PWT_PWT_CHECK_HPP
#define PWT_PWT_CHECK_HPP

#include "pwt/model.hpp"
#include "pwt/spectrum.hpp"

#include <complex>
#include <string>
#include <vector>

namespace pwt {

struct PWTOptions {
    double eps_spec = 1e-7;   // max |E_n T / pi - m_n| accepted
    double eps_parity = 1e-6; // profile and mode parity defect bound
    int m_search = 15;        // largest odd m_1 candidate scanned
    int max_shift = 8;        // largest accepted constant tower offset
};

// Result of scanning for a commensurate level tower E_n = (pi / T) m_n.
struct PeriodDetection {
    bool found = false;
    double T = 0.0;         // smallest transfer time among the candidates
    double c_shift = 0.0;   // m_0, nonzero only for gapped towers
    std::vector<int> m;     // integer labels, strictly increasing
    double max_defect = 0.0;
    bool alternating = false; // m_n - m_0 has the parity of n throughout
};

// Scans odd m_1 candidates in ascending order and returns the first tower
// whose defects stay within eps_spec; found=false when none qualifies.
// Needs at least 8 levels.
PeriodDetection detect_period(const std::vector<double>& energies, const PWTOptions& opts = {});

struct PWTReport {
    bool is_pwt = false;
    bool parity_ok = false;      // v, K (and q) all even
    bool modes_parity_ok = true; // eigenfunction parity alternates with n
    bool spectrum_ok = false;    // commensurate tower with an admissible shift
    bool condition_b = false;    // |m_n - n - c| settles over the upper half
    double T = 0.0;
    double c_shift = 0.0;
    PeriodDetection detection;
    ParityReport v_parity, K_parity, q_parity;
    std::string note;
};

// Full decision: profile parity, tower detection, optional eigenfunction
// parity check. modes may be null.
PWTReport classify_pwt(const TLLModel& model, const SLSpectrum& spec,
                       const std::vector<EigenMode>* modes, const PWTOptions& opts = {});

// Independent witness: at the transfer time the two-point function of the
// field equals its spatial mirror at time zero. Returns the max deviation
// over the grid of the mode sum at (x, T) against (-x, 0), reference point
// x_ref, truncated at n_modes. Term-by-term cancellation makes this
// truncation-independent exactly when the tower is commensurate.
double correlation_reflection_defect(const std::vector<EigenMode>& modes,
                                     const std::vector<double>& energies,
                                     const std::vector<double>& x, double T,
                                     double x_ref, int n_modes);

} // namespace pwt

#endif

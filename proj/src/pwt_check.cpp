#include "pwt/pwt_check.hpp"

#include "pwt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace pwt {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

PeriodDetection detect_period(const std::vector<double>& energies, const PWTOptions& opts) {
    const std::size_t N = energies.size();
    if (N < 8)
        throw InsufficientModes("period detection needs at least 8 levels, got "
                                + std::to_string(N));
    if (!(energies[1] > 0.0))
        throw InconsistentInput("E_1 must be positive for period detection");

    PeriodDetection best;
    bool have_diag = false;
    for (int m1 = 1; m1 <= opts.m_search; m1 += 2) {
        const double T = kPi * m1 / energies[1];
        std::vector<int> m(N);
        double defect = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            const double t = energies[n] * T / kPi;
            m[n] = static_cast<int>(std::llround(t));
            defect = std::max(defect, std::abs(t - m[n]));
        }
        if (!have_diag) {
            best.max_defect = defect; // diagnostics from the tightest candidate
            have_diag = true;
        }
        if (defect > opts.eps_spec) continue;
        bool increasing = m[0] >= 0;
        for (std::size_t n = 1; n < N && increasing; ++n)
            if (m[n] <= m[n - 1]) increasing = false;
        if (!increasing) continue;

        best.found = true;
        best.T = T;
        best.m = m;
        best.c_shift = m[0];
        best.max_defect = defect;
        best.alternating = true;
        for (std::size_t n = 0; n < N; ++n)
            if ((m[n] - m[0]) % 2 != static_cast<int>(n % 2)) best.alternating = false;
        return best;
    }
    return best;
}

PWTReport classify_pwt(const TLLModel& model, const SLSpectrum& spec,
                       const std::vector<EigenMode>* modes, const PWTOptions& opts) {
    PWTReport rep;
    rep.v_parity = parity_check(model.v, model.geometry, opts.eps_parity);
    rep.K_parity = parity_check(model.K, model.geometry, opts.eps_parity);
    if (model.q) rep.q_parity = parity_check(*model.q, model.geometry, opts.eps_parity);
    else rep.q_parity = ParityReport{ParityClass::Even, 0.0, 0.0};
    rep.parity_ok = rep.v_parity.cls == ParityClass::Even
                    && rep.K_parity.cls == ParityClass::Even
                    && rep.q_parity.cls == ParityClass::Even;

    rep.detection = detect_period(spec.energies, opts);
    const int c = rep.detection.found ? static_cast<int>(rep.detection.c_shift) : 0;
    if (rep.detection.found) {
        rep.T = rep.detection.T;
        rep.c_shift = rep.detection.c_shift;
        const bool shift_ok = model.q ? (c % 2 == 0 && c <= opts.max_shift) : c == 0;
        rep.spectrum_ok = rep.detection.alternating && shift_ok;
        if (!shift_ok) rep.note = "tower offset " + std::to_string(c) + " not admissible";
        else if (!rep.detection.alternating) rep.note = "tower labels do not alternate";
    } else {
        rep.note = "no commensurate tower within defect "
                   + std::to_string(rep.detection.max_defect);
    }

    if (modes) {
        for (const auto& m : *modes) {
            const ParityClass want = m.n % 2 == 0 ? ParityClass::Even : ParityClass::Odd;
            if (m.parity != want || m.parity_defect > opts.eps_parity) {
                rep.modes_parity_ok = false;
                break;
            }
        }
    }

    if (!rep.parity_ok && rep.note.empty()) rep.note = "profiles are not even";
    rep.condition_b = false;
    if (rep.detection.found) {
        const auto& m = rep.detection.m;
        const std::size_t half = m.size() / 2;
        rep.condition_b = true;
        for (std::size_t n = half + 1; n < m.size(); ++n) {
            const int dn = std::abs(m[n] - static_cast<int>(n) - c);
            const int dp = std::abs(m[n - 1] - static_cast<int>(n - 1) - c);
            if (dn > dp) rep.condition_b = false;
        }
    }

    rep.is_pwt = rep.parity_ok && rep.spectrum_ok && rep.modes_parity_ok;
    return rep;
}

double correlation_reflection_defect(const std::vector<EigenMode>& modes,
                                     const std::vector<double>& energies,
                                     const std::vector<double>& x, double T,
                                     double x_ref, int n_modes) {
    if (n_modes < 2 || modes.size() < static_cast<std::size_t>(n_modes) + 1
        || energies.size() < static_cast<std::size_t>(n_modes) + 1)
        throw InsufficientModes("reflection witness needs n_modes+1 modes and energies");
    const std::size_t N = x.size();
    for (const auto& m : modes)
        if (m.u.size() != N) throw InconsistentInput("mode samples do not match the grid");

    // nearest grid node to the reference point
    std::size_t jref = 0;
    double dbest = std::abs(x[0] - x_ref);
    for (std::size_t j = 1; j < N; ++j) {
        const double d = std::abs(x[j] - x_ref);
        if (d < dbest) {
            dbest = d;
            jref = j;
        }
    }

    std::vector<std::complex<double>> sT(N, 0.0), s0(N, 0.0);
    const double e_floor = 1e-9 * energies[1];
    for (int n = 0; n <= n_modes; ++n) {
        if (!(energies[n] > e_floor)) continue; // zero mode carries no oscillator
        const double coef = 0.5 * kPi / energies[n];
        const std::complex<double> ph =
            std::exp(std::complex<double>(0.0, -energies[n] * T));
        const double ur = modes[n].u[jref];
        for (std::size_t i = 0; i < N; ++i) {
            sT[i] += coef * ur * modes[n].u[i] * ph;
            s0[i] += coef * ur * modes[n].u[N - 1 - i]; // mirrored point at time zero
        }
    }
    double defect = 0.0;
    for (std::size_t i = 0; i < N; ++i) defect = std::max(defect, std::abs(sT[i] - s0[i]));
    return defect;
}

} // namespace pwt

#include "pwt/profile.hpp"

#include "pwt/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace pwt {

ProfileFn ProfileFn::constant(double c) {
    ProfileFn p;
    p.m_kind = ProfileKind::Constant;
    p.m_coeffs = {c};
    return p;
}

ProfileFn ProfileFn::sqrt_profile(double v) {
    ProfileFn p;
    p.m_kind = ProfileKind::SqrtProfile;
    p.m_coeffs = {v};
    return p;
}

ProfileFn ProfileFn::power_profile(double K, double alpha) {
    ProfileFn p;
    p.m_kind = ProfileKind::PowerProfile;
    p.m_coeffs = {K, alpha};
    return p;
}

ProfileFn ProfileFn::cosine_series(std::vector<double> coeffs) {
    if (coeffs.empty()) throw InconsistentInput("cosine_series: empty coefficient list");
    ProfileFn p;
    p.m_kind = ProfileKind::CosineSeries;
    p.m_coeffs = std::move(coeffs);
    return p;
}

ProfileFn ProfileFn::tabulated(std::vector<double> samples, double L, int order) {
    if (samples.size() < 16 || samples.size() % 2 == 0)
        throw InconsistentInput("tabulated: sample count must be odd and >= 16");
    if (!(L > 0.0)) throw InconsistentInput("tabulated: L must be positive");
    ProfileFn p;
    p.m_kind = ProfileKind::Tabulated;
    const double h = L / (static_cast<double>(samples.size()) - 1.0);
    p.m_interp = UniformInterp(samples, -0.5 * L, h, order);
    p.m_coeffs = std::move(samples);
    p.m_tab_L = L;
    p.m_order = order;
    return p;
}

namespace {

void check_domain(double x, double L) {
    const double slack = 1e-12 * L;
    if (!(std::abs(x) <= 0.5 * L + slack))
        throw DomainError("profile evaluated outside [-L/2, L/2]");
}

// 1 - (2x/L)^2 in product form: L +- 2x is exact near the respective wall
// (Sterbenz), so wall distances survive where 1 - s*s would cancel them.
double one_minus_s2(double x, double L) {
    return std::max(0.0, (L - 2.0 * x) * (L + 2.0 * x) / (L * L));
}

} // namespace

double ProfileFn::eval(double x, double L) const {
    check_domain(x, L);
    switch (m_kind) {
        case ProfileKind::Constant:
            return m_coeffs[0];
        case ProfileKind::SqrtProfile:
            return m_coeffs[0] * std::sqrt(one_minus_s2(x, L));
        case ProfileKind::PowerProfile:
            return m_coeffs[0] * std::pow(one_minus_s2(x, L), m_coeffs[1]);
        case ProfileKind::CosineSeries: {
            double acc = m_coeffs[0];
            for (std::size_t k = 1; k < m_coeffs.size(); ++k)
                acc += m_coeffs[k] * std::cos(static_cast<double>(k) * std::numbers::pi * x / L);
            return acc;
        }
        case ProfileKind::Tabulated:
            if (std::abs(L - m_tab_L) > 1e-12 * m_tab_L)
                throw InconsistentInput("tabulated profile evaluated with a different L");
            return m_interp.eval(x);
    }
    throw InconsistentInput("profile: unknown kind");
}

double ProfileFn::deriv(double x, double L) const {
    check_domain(x, L);
    const double s = 2.0 * x / L;
    switch (m_kind) {
        case ProfileKind::Constant:
            return 0.0;
        case ProfileKind::SqrtProfile: {
            const double g = one_minus_s2(x, L);
            if (g == 0.0) return -std::copysign(INFINITY, x) * std::abs(m_coeffs[0]);
            return m_coeffs[0] * (-s * (2.0 / L)) / std::sqrt(g);
        }
        case ProfileKind::PowerProfile: {
            const double g = one_minus_s2(x, L);
            const double a = m_coeffs[1];
            if (g == 0.0) {
                if (a > 1.0 || a == 0.0) return 0.0;
                if (a == 1.0) return -4.0 * m_coeffs[0] * s / L;
                return -std::copysign(INFINITY, x * m_coeffs[0] * a);
            }
            return -4.0 * m_coeffs[0] * a * s * std::pow(g, a - 1.0) / L;
        }
        case ProfileKind::CosineSeries: {
            double acc = 0.0;
            for (std::size_t k = 1; k < m_coeffs.size(); ++k) {
                const double kk = static_cast<double>(k) * std::numbers::pi / L;
                acc -= m_coeffs[k] * kk * std::sin(static_cast<double>(k) * std::numbers::pi * x / L);
            }
            return acc;
        }
        case ProfileKind::Tabulated:
            return m_interp.deriv(x);
    }
    throw InconsistentInput("profile: unknown kind");
}

ProfileFn ProfileFn::scaled(double factor) const {
    ProfileFn p = *this;
    if (m_kind == ProfileKind::Tabulated) {
        std::vector<double> s = m_coeffs;
        for (double& v : s) v *= factor;
        return tabulated(std::move(s), m_tab_L, m_order);
    }
    switch (m_kind) {
        case ProfileKind::Constant:
        case ProfileKind::SqrtProfile:
            p.m_coeffs[0] *= factor;
            break;
        case ProfileKind::PowerProfile:
            p.m_coeffs[0] *= factor; // exponent untouched
            break;
        case ProfileKind::CosineSeries:
            for (double& v : p.m_coeffs) v *= factor;
            break;
        default:
            break;
    }
    return p;
}

std::string ProfileFn::describe() const {
    char buf[128];
    switch (m_kind) {
        case ProfileKind::Constant:
            std::snprintf(buf, sizeof buf, "constant(%g)", m_coeffs[0]);
            return buf;
        case ProfileKind::SqrtProfile:
            std::snprintf(buf, sizeof buf, "sqrt_profile(%g)", m_coeffs[0]);
            return buf;
        case ProfileKind::PowerProfile:
            std::snprintf(buf, sizeof buf, "power_profile(%g, %g)", m_coeffs[0], m_coeffs[1]);
            return buf;
        case ProfileKind::CosineSeries:
            std::snprintf(buf, sizeof buf, "cosine_series(%zu terms)", m_coeffs.size());
            return buf;
        case ProfileKind::Tabulated:
            std::snprintf(buf, sizeof buf, "tabulated(%zu samples, order %d)", m_coeffs.size(),
                          m_order);
            return buf;
    }
    return "unknown";
}

ParityReport parity_check(const ProfileFn& p, const SystemGeometry& geom, double threshold) {
    const std::vector<double> x = make_grid(geom);
    const int n = geom.grid_points;
    std::vector<double> vals(static_cast<std::size_t>(n));
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        vals[i] = p.eval(x[i], geom.L);
        scale = std::max(scale, std::abs(vals[i]));
    }
    if (scale == 0.0) return {ParityClass::Even, 0.0, 0.0};
    double de = 0.0, dole = 0.0;
    for (int i = 0; i < n; ++i) {
        de = std::max(de, std::abs(vals[i] - vals[n - 1 - i]));
        dole = std::max(dole, std::abs(vals[i] + vals[n - 1 - i]));
    }
    ParityReport rep;
    rep.defect_even = de / scale;
    rep.defect_odd = dole / scale;
    if (rep.defect_even <= threshold) rep.cls = ParityClass::Even;
    else if (rep.defect_odd <= threshold) rep.cls = ParityClass::Odd;
    else rep.cls = ParityClass::Neither;
    return rep;
}

double eval_strict_positive(const ProfileFn& p, double x, double L, const char* name) {
    const double v = p.eval(x, L);
    if (!std::isfinite(v) || v <= 0.0)
        throw SingularValue(std::string(name) + " profile not strictly positive/finite at x = " +
                            std::to_string(x));
    return v;
}

} // namespace pwt

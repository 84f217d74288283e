#include "pwt/slcoeffs.hpp"

#include "pwt/errors.hpp"
#include "pwt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace pwt {

double SLCoefficients::w(double x) const {
    return K.eval(x, geometry.L) / eval_strict_positive(v, x, geometry.L, "v");
}

double SLCoefficients::p(double x) const {
    return v.eval(x, geometry.L) * K.eval(x, geometry.L);
}

double SLCoefficients::q_at(double x) const {
    return q ? q->eval(x, geometry.L) : 0.0;
}

SLProblem SLCoefficients::problem() const {
    SLProblem prob;
    const double L = geometry.L;
    const ProfileFn vf = v, Kf = K;
    prob.w = [vf, Kf, L](double x) {
        return eval_strict_positive(Kf, x, L, "K") / eval_strict_positive(vf, x, L, "v");
    };
    prob.p = [vf, Kf, L](double x) { return vf.eval(x, L) * Kf.eval(x, L); };
    if (q) {
        const ProfileFn qf = *q;
        prob.q = [qf, L](double x) { return qf.eval(x, L); };
        prob.q_is_zero = false;
    } else {
        prob.q = [](double) { return 0.0; };
        prob.q_is_zero = true;
    }
    prob.L = L;
    return prob;
}

SLCoefficients assemble_coefficients(const TLLModel& model) {
    SLCoefficients co;
    co.geometry = model.geometry;
    co.v = model.v;
    co.K = model.K;
    co.q = model.q;
    // Positivity scan on the open interval; endpoints may vanish (irregular).
    const auto x = make_grid(model.geometry);
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const double wi = co.w(x[i]);
        const double pi = co.p(x[i]);
        if (!(wi > 0.0) || !std::isfinite(wi))
            throw PositivityError("weight w = K/v not strictly positive at x = " + std::to_string(x[i]));
        if (!(pi > 0.0) || !std::isfinite(pi))
            throw PositivityError("stiffness p = v*K not strictly positive at x = " + std::to_string(x[i]));
    }
    return co;
}

double uniform_end_derivative(const std::vector<double>& f, double h, bool left) {
    const std::size_t n = f.size();
    const std::size_t i0 = left ? 0 : n - 1;
    const int dir = left ? 1 : -1;
    const double f0 = f[i0], f1 = f[i0 + dir], f2 = f[i0 + 2 * dir];
    const double f3 = f[i0 + 3 * dir], f4 = f[i0 + 4 * dir];
    return dir * (-25.0 * f0 + 48.0 * f1 - 36.0 * f2 + 16.0 * f3 - 3.0 * f4) / (12.0 * h);
}

std::vector<double> uniform_second_derivative(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d2(n);
    const double ih2 = 1.0 / (12.0 * h * h);
    d2[0] = (35.0 * f[0] - 104.0 * f[1] + 114.0 * f[2] - 56.0 * f[3] + 11.0 * f[4]) * ih2;
    d2[1] = (11.0 * f[0] - 20.0 * f[1] + 6.0 * f[2] + 4.0 * f[3] - f[4]) * ih2;
    for (std::size_t j = 2; j + 2 < n; ++j)
        d2[j] = (-f[j - 2] + 16.0 * f[j - 1] - 30.0 * f[j] + 16.0 * f[j + 1] - f[j + 2]) * ih2;
    d2[n - 2] = (11.0 * f[n - 1] - 20.0 * f[n - 2] + 6.0 * f[n - 3] + 4.0 * f[n - 4] - f[n - 5]) * ih2;
    d2[n - 1] = (35.0 * f[n - 1] - 104.0 * f[n - 2] + 114.0 * f[n - 3] - 56.0 * f[n - 4] + 11.0 * f[n - 5]) * ih2;
    return d2;
}

SLProblem LiouvilleForm::problem() const {
    SLProblem prob;
    const double iv2 = 1.0 / (v0 * v0);
    prob.w = [iv2](double) { return iv2; };
    prob.p = [](double) { return 1.0; };
    // Shared interpolant: the form may go out of scope before the problem.
    auto qi = std::make_shared<UniformInterp>(qhat, y.front(), y[1] - y[0], 3);
    prob.q = [qi, iv2](double yy) { return -qi->eval(yy) * iv2; };
    double qmax = 0.0;
    for (double s : qhat) qmax = std::max(qmax, std::abs(s));
    prob.q_is_zero = qmax == 0.0 && eta_left == 0.0 && eta_right == 0.0;
    prob.L = L;
    if (eta_left != 0.0 || eta_right != 0.0) {
        prob.bc = BCKind::Robin;
        prob.eta_left = eta_left;
        prob.eta_right = eta_right;
    }
    return prob;
}

LiouvilleForm liouville_transform(const TLLModel& model) {
    const SystemGeometry& geom = model.geometry;
    LiouvilleForm form;
    form.map = coordinate_map(model.v, geom);
    form.v0 = form.map.v0;
    form.L = geom.L;
    form.y = make_grid(geom);
    const double h = geom.spacing();
    const std::size_t n = form.y.size();

    std::vector<double> s(n), x_of_y(n);
    for (std::size_t j = 0; j < n; ++j) {
        x_of_y[j] = form.map.x_of(form.y[j]);
        s[j] = std::sqrt(eval_strict_positive(model.K, x_of_y[j], geom.L, "K"));
    }

    const double v02 = form.v0 * form.v0;
    auto qhat_from = [&](const std::vector<double>& sv, const std::vector<double>& xv,
                         double hv) {
        const auto d2 = uniform_second_derivative(sv, hv);
        std::vector<double> out(sv.size());
        double curv_max = 0.0, smin = 1e300, smax = 0.0;
        for (double sj : sv) {
            smin = std::min(smin, sj);
            smax = std::max(smax, sj);
        }
        for (std::size_t j = 0; j < sv.size(); ++j) {
            out[j] = v02 * d2[j] / sv[j];
            curv_max = std::max(curv_max, std::abs(out[j]));
        }
        // The stencil's zero sum is inexact: constant data leaves ulp residue
        // amplified by 1/h^2. A curvature term below that floor is
        // indistinguishable from zero and must not trip the noise guard.
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * v02 *
                             (smax / smin) / (hv * hv);
        if (curv_max <= floor) std::fill(out.begin(), out.end(), 0.0);
        if (model.q) {
            for (std::size_t j = 0; j < sv.size(); ++j) {
                const double wj = model.K.eval(xv[j], geom.L) / model.v.eval(xv[j], geom.L);
                out[j] -= model.q->eval(xv[j], geom.L) / wj;
            }
        }
        return out;
    };

    form.qhat = qhat_from(s, x_of_y, h);

    // Grid-halving consistency check on the differentiated term.
    std::vector<double> s2, x2;
    for (std::size_t j = 0; j < n; j += 2) {
        s2.push_back(s[j]);
        x2.push_back(x_of_y[j]);
    }
    const auto coarse = qhat_from(s2, x2, 2.0 * h);
    double est = 0.0, qmax = 0.0;
    for (std::size_t j = 0; j < coarse.size(); ++j)
        est = std::max(est, std::abs(coarse[j] - form.qhat[2 * j]));
    for (double qv : form.qhat) qmax = std::max(qmax, std::abs(qv));
    form.deriv_error_estimate = est;
    if (qmax > 0.0 && est > 1e-4 * qmax)
        throw DifferentiationNoise("second derivative of sqrt(K) is grid-noise dominated: estimate "
                                   + std::to_string(est) + " vs scale " + std::to_string(qmax));

    // Induced end conditions from the sqrt(K) gauge factor.
    form.eta_left = uniform_end_derivative(s, h, true) / s.front();
    form.eta_right = uniform_end_derivative(s, h, false) / s.back();
    const double eta_snap = 1e-8 / geom.L;
    if (std::abs(form.eta_left) < eta_snap) form.eta_left = 0.0;
    if (std::abs(form.eta_right) < eta_snap) form.eta_right = 0.0;

    form.V.resize(n);
    for (std::size_t j = 0; j < n; ++j) form.V[j] = form.qhat[j] / v02;
    return form;
}

} // namespace pwt

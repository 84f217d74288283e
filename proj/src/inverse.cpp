#include "pwt/inverse.hpp"

#include "pwt/errors.hpp"
#include "pwt/ode.hpp"
#include "pwt/slcoeffs.hpp"
#include "pwt/solver_fd.hpp"
#include "pwt/solver_shooting.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

namespace pwt {

namespace {

// Dense symmetric eigenvalues by cyclic Jacobi; m is small (basis size).
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int m) {
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) off += a[i * m + j] * a[i * m + j];
        if (off < 1e-30 * (1.0 + std::abs(a[0]))) break;
        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) {
                double apq = a[p * m + q];
                if (apq == 0.0) continue;
                double theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < m; ++k) {
                    double akp = a[k * m + p], akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for (int k = 0; k < m; ++k) {
                    double apk = a[p * m + k], aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(m);
    for (int i = 0; i < m; ++i) ev[i] = a[i * m + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Gaussian elimination with partial pivoting; a is m x m row-major.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, int m) {
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
        if (std::abs(a[piv * m + col]) < 1e-300)
            throw RankDeficient("normal equations singular at column " + std::to_string(col));
        if (piv != col) {
            for (int k = col; k < m; ++k) std::swap(a[piv * m + k], a[col * m + k]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < m; ++r) {
            double f = a[r * m + col] / a[col * m + col];
            for (int k = col; k < m; ++k) a[r * m + k] -= f * a[col * m + k];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(m);
    for (int r = m - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < m; ++k) s -= a[r * m + k] * x[k];
        x[r] = s / a[r * m + r];
    }
    return x;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Forward-difference Jacobian, columns in parallel.
std::vector<double> jacobian(const std::function<std::vector<double>(const std::vector<double>&)>& f,
                             const std::vector<double>& c, const std::vector<double>& r0,
                             double fd_step) {
    int m = static_cast<int>(c.size());
    int nr = static_cast<int>(r0.size());
    std::vector<double> J(static_cast<std::size_t>(nr) * m);
    std::vector<std::future<std::vector<double>>> cols;
    cols.reserve(m);
    for (int k = 0; k < m; ++k) {
        cols.push_back(std::async(std::launch::async, [&, k]() {
            double step = fd_step * std::max(1.0, std::abs(c[k]));
            std::vector<double> cp = c;
            cp[k] += step;
            std::vector<double> rp = f(cp);
            std::vector<double> col(nr);
            for (int i = 0; i < nr; ++i) col[i] = (rp[i] - r0[i]) / step;
            return col;
        }));
    }
    for (int k = 0; k < m; ++k) {
        std::vector<double> col = cols[k].get();
        if (static_cast<int>(col.size()) != nr)
            throw InconsistentInput("residual dimension changed during Jacobian evaluation");
        for (int i = 0; i < nr; ++i) J[static_cast<std::size_t>(i) * m + k] = col[i];
    }
    return J;
}

double condition_of_normal(const std::vector<double>& A, int m) {
    std::vector<double> ev = symmetric_eigenvalues(A, m);
    double lo = ev.front(), hi = ev.back();
    if (!(hi > 0.0)) return std::numeric_limits<double>::infinity();
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(hi / lo);
}

} // namespace

LevMarResult levmar(const std::function<std::vector<double>(const std::vector<double>&)>& f,
                    std::vector<double> c0, const LevMarOptions& opts) {
    int m = static_cast<int>(c0.size());
    if (m < 1) throw UsageError("levmar needs at least one parameter");
    LevMarResult out;
    std::vector<double> c = std::move(c0);
    std::vector<double> r = f(c);
    double rho = opts.tikhonov;
    auto cost_of = [&](const std::vector<double>& rr, const std::vector<double>& cc) {
        double cn = norm2(cc);
        return norm2(rr) * norm2(rr) + rho * cn * cn;
    };
    double cost = cost_of(r, c);
    double lambda = opts.lambda_init;
    out.trace.push_back({0, norm2(r), lambda, c});

    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        std::vector<double> J = jacobian(f, c, r, opts.fd_step);
        int nr = static_cast<int>(r.size());
        // Normal matrix and gradient, with the Tikhonov term folded in.
        std::vector<double> A(static_cast<std::size_t>(m) * m, 0.0), g(m, 0.0);
        for (int i = 0; i < nr; ++i)
            for (int a = 0; a < m; ++a) {
                double Ja = J[static_cast<std::size_t>(i) * m + a];
                g[a] += Ja * r[i];
                for (int b = a; b < m; ++b)
                    A[static_cast<std::size_t>(a) * m + b] += Ja * J[static_cast<std::size_t>(i) * m + b];
            }
        for (int a = 0; a < m; ++a) {
            for (int b = a + 1; b < m; ++b)
                A[static_cast<std::size_t>(b) * m + a] = A[static_cast<std::size_t>(a) * m + b];
            A[static_cast<std::size_t>(a) * m + a] += rho;
            g[a] += rho * c[a];
        }
        out.cond_estimate = condition_of_normal(A, m);
        if (!(out.cond_estimate <= 1e12))
            throw RankDeficient("Jacobian condition estimate " + std::to_string(out.cond_estimate));

        bool accepted = false;
        while (!accepted) {
            std::vector<double> Ad = A;
            for (int a = 0; a < m; ++a) {
                double d = A[static_cast<std::size_t>(a) * m + a];
                Ad[static_cast<std::size_t>(a) * m + a] += lambda * std::max(d, 1e-300);
            }
            std::vector<double> neg_g(m);
            for (int a = 0; a < m; ++a) neg_g[a] = -g[a];
            std::vector<double> delta = solve_dense(Ad, neg_g, m);
            std::vector<double> ct(m);
            for (int a = 0; a < m; ++a) ct[a] = c[a] + delta[a];
            std::vector<double> rt = f(ct);
            double cost_t = cost_of(rt, ct);
            if (cost_t < cost) {
                double drop = cost - cost_t;
                c = std::move(ct);
                r = std::move(rt);
                cost = cost_t;
                lambda = std::max(lambda / 3.0, 1e-14);
                accepted = true;
                out.trace.push_back({iter, norm2(r), lambda, c});
                if (drop <= opts.tol * std::max(1.0, cost)) {
                    out.converged = true;
                    out.params = c;
                    out.rnorm = norm2(r);
                    return out;
                }
            } else {
                // A rejected trial that moved the cost by less than the
                // convergence budget means the iterate is stationary to
                // within the forward map's noise; inflating the damping
                // further would only walk it to the divergence cap.
                if (std::abs(cost_t - cost) <= opts.tol * std::max(1.0, cost)) {
                    out.converged = true;
                    out.params = c;
                    out.rnorm = norm2(r);
                    return out;
                }
                lambda *= 4.0;
                if (lambda > 1e12)
                    throw DivergedFit("damping exceeded 1e12 at iteration " + std::to_string(iter));
            }
        }
    }
    out.params = c;
    out.rnorm = norm2(r);
    return out;
}

double qhat_basis_eval(const std::vector<double>& c, double L, double y) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        s += c[k] * std::cos(2.0 * M_PI * static_cast<double>(k + 1) * y / L);
    return s;
}

namespace {

struct GaugeEnd {
    double s = 1.0;
    double sp = 0.0; // s'(L/2)
};

// Integrate v0^2 s'' = qhat s over [0, L/2]; the basis is even, so the left
// end follows by reflection.
GaugeEnd gauge_factor_end(const std::vector<double>& c, double v0, double L, double s0) {
    double iv02 = 1.0 / (v0 * v0);
    ODERhs rhs = [&c, L, iv02](double y, const double* s, double* ds) {
        ds[0] = s[1];
        ds[1] = qhat_basis_eval(c, L, y) * s[0] * iv02;
    };
    std::vector<double> y0{s0, 0.0};
    std::vector<double> yend = integrate_ode(rhs, y0, 0.0, L / 2.0, {1e-12, 1e-14, 1e-12});
    return {yend[0], yend[1]};
}

} // namespace

SLSpectrum inverse_forward_spectrum(const std::vector<double>& c, double v0,
                                    const SystemGeometry& geom, int n_max, int base_points) {
    double L = geom.L;
    GaugeEnd end = gauge_factor_end(c, v0, L, 1.0);
    if (!(end.s > 0.0))
        throw SignChange("gauge factor non-positive at the wall inside the forward map");
    double eta = end.sp / end.s;

    SLProblem prob;
    double iv02 = 1.0 / (v0 * v0);
    prob.w = [iv02](double) { return iv02; };
    prob.p = [](double) { return 1.0; };
    prob.q = [c, L, iv02](double y) { return -qhat_basis_eval(c, L, y) * iv02; };
    prob.L = L;
    bool trivial = c.empty() || std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; });
    prob.bc = trivial ? BCKind::Neumann : BCKind::Robin;
    prob.eta_left = trivial ? 0.0 : -eta;
    prob.eta_right = trivial ? 0.0 : eta;
    prob.q_is_zero = trivial;

    FDOptions fd;
    fd.base_points = base_points;
    fd.refinements = 1;
    return solve_spectrum_fd(prob, n_max, fd);
}

namespace {

void validate_inverse(const InverseProblem& prob) {
    int n_levels = static_cast<int>(prob.target_energies.size());
    if (n_levels < 3) throw InsufficientModes("inverse fit needs at least levels 0..2");
    int N = n_levels - 1;
    if (prob.basis_size < 1) throw UsageError("basis size must be positive");
    if (N < 2 * prob.basis_size)
        throw InsufficientModes("need at least two target levels per basis coefficient");
    for (int n = 0; n + 1 < n_levels; ++n)
        if (!(prob.target_energies[n] < prob.target_energies[n + 1]))
            throw InconsistentInput("target tower must be strictly increasing");
    double e1 = prob.target_energies[1];
    if (!(e1 > 0.0)) throw InconsistentInput("first excited target must be positive");
    if (std::abs(prob.target_energies[0]) > 1e-9 * e1)
        throw InconsistentInput("gapless channel requires a zero ground level");
    if (!(prob.K0 > 0.0)) throw DomainError("K0 must be strictly positive");
    if (prob.tikhonov < 0.0) throw UsageError("Tikhonov weight must be non-negative");
    ParityReport vp = parity_check(prob.v, prob.geometry, 1e-6);
    if (vp.cls != ParityClass::Even)
        throw InconsistentInput("inverse design assumes an even velocity profile");
}

// Residual vector: weighted ground-level pin (in equivalent energy units,
// smooth through zero) followed by the excited-level energy mismatches. A
// sign change during a wild trial step is reported as a huge residual so the
// damping loop backs off instead of aborting.
std::vector<double> fit_residual(const std::vector<double>& c, double v0,
                                 const SystemGeometry& geom,
                                 const std::vector<double>& target, int points) {
    int N = static_cast<int>(target.size()) - 1;
    std::vector<double> r(static_cast<std::size_t>(N) + 1);
    try {
        SLSpectrum spec = inverse_forward_spectrum(c, v0, geom, N, points);
        r[0] = 10.0 * spec.lambdas[0] / (2.0 * target[1]);
        for (int n = 1; n <= N; ++n) r[n] = spec.energies[n] - target[n];
    } catch (const SignChange&) {
        double bad = 1e6 * (1.0 + norm2(c));
        std::fill(r.begin(), r.end(), bad);
    }
    return r;
}

} // namespace

FitResult fit_qhat(const InverseProblem& prob, const InverseOptions& opts) {
    validate_inverse(prob);
    CoordinateMap map = coordinate_map(prob.v, prob.geometry);
    double v0 = map.v0;
    const std::vector<double>& target = prob.target_energies;

    LevMarOptions lm = opts.lm;
    lm.tikhonov = prob.tikhonov;
    auto coarse = [&](const std::vector<double>& c) {
        return fit_residual(c, v0, prob.geometry, target, opts.fit_points);
    };
    std::vector<double> c0(static_cast<std::size_t>(prob.basis_size), 0.0);
    LevMarResult stage1 = levmar(coarse, c0, lm);

    LevMarOptions polish = lm;
    polish.max_iters = opts.polish_iters;
    polish.lambda_init = 1e-6;
    auto fine = [&](const std::vector<double>& c) {
        return fit_residual(c, v0, prob.geometry, target, opts.polish_points);
    };
    LevMarResult stage2 = levmar(fine, stage1.params, polish);

    FitResult out;
    out.coefficients = stage2.params;
    out.residual_norm = stage2.rnorm;
    out.cond_estimate = stage2.cond_estimate;
    out.trace = stage1.trace;
    int offset = stage1.trace.empty() ? 0 : stage1.trace.back().iter;
    for (std::size_t i = 1; i < stage2.trace.size(); ++i) {
        IterRecord rec = stage2.trace[i];
        rec.iter += offset;
        out.trace.push_back(rec);
    }

    std::vector<double> y = make_grid(prob.geometry);
    out.qhat_fit.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        out.qhat_fit[i] = qhat_basis_eval(out.coefficients, prob.geometry.L, y[i]);
    return out;
}

RecoveredK recover_K(const std::vector<double>& qhat, const CoordinateMap& map, double K0) {
    int n = static_cast<int>(qhat.size());
    if (n < 17 || n % 2 == 0) throw UsageError("potential samples must be odd and at least 17");
    if (!(K0 > 0.0)) throw DomainError("K0 must be strictly positive");
    double L = map.L;
    double h = L / (n - 1);
    int mid = (n - 1) / 2;
    UniformInterp qi(qhat, -L / 2.0, h, 3);
    double iv02 = 1.0 / (map.v0 * map.v0);
    ODERhs rhs = [&qi, iv02](double y, const double* s, double* ds) {
        ds[0] = s[1];
        ds[1] = qi.eval(y) * s[0] * iv02;
    };

    std::vector<double> s(n, 0.0), sp(n, 0.0);
    ODEOptions ode{1e-12, 1e-14, 1e-12};
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<double> stops;
        stops.reserve(mid + 1);
        for (int i = 0; i <= mid; ++i) {
            int idx = dir == 0 ? mid + i : mid - i;
            stops.push_back(-L / 2.0 + idx * h);
        }
        std::vector<double> y0{std::sqrt(K0), 0.0};
        integrate_ode_stops(
            rhs, y0, stops,
            [&](std::size_t j, const std::vector<double>& state) {
                int idx = dir == 0 ? mid + static_cast<int>(j) : mid - static_cast<int>(j);
                if (!(state[0] > 0.0))
                    throw SignChange("gauge factor crossed zero at y = " + std::to_string(stops[j]));
                s[idx] = state[0];
                sp[idx] = state[1];
            },
            ode);
    }

    RecoveredK out;
    out.s_samples = s;
    out.bc_defect = std::max(std::abs(sp.front()), std::abs(sp.back()));
    out.positivity_ok = true;

    UniformInterp si(s, -L / 2.0, h, 3);
    std::vector<double> K_samples(n);
    for (int i = 0; i < n; ++i) {
        double x = -L / 2.0 + i * h;
        double y = std::clamp(map.y_of(x), -L / 2.0, L / 2.0);
        double sv = si.eval(y);
        if (!(sv > 0.0)) throw SignChange("gauge factor interpolant non-positive");
        K_samples[i] = sv * sv;
    }
    out.K = ProfileFn::tabulated(std::move(K_samples), L, 3);
    return out;
}

ReconstructionResult reconstruct(const InverseProblem& prob, const InverseOptions& opts) {
    ReconstructionResult out;
    out.fit = fit_qhat(prob, opts);
    CoordinateMap map = coordinate_map(prob.v, prob.geometry);
    out.recovered = recover_K(out.fit.qhat_fit, map, prob.K0);

    int N = static_cast<int>(prob.target_energies.size()) - 1;
    SLSpectrum spec =
        inverse_forward_spectrum(out.fit.coefficients, map.v0, prob.geometry, N, opts.polish_points);
    double acc = 0.0;
    for (int n = 1; n <= N; ++n) {
        double rel = (spec.energies[n] - prob.target_energies[n]) / prob.target_energies[n];
        acc += rel * rel;
    }
    out.spectral_residual = std::sqrt(acc / N);
    return out;
}

RoundTripReport roundtrip_validate(const ReconstructionResult& result,
                                   const InverseProblem& prob, int n_check) {
    if (n_check < 8) throw UsageError("round-trip check needs at least levels 0..8");
    TLLModel model = make_massless(prob.geometry, prob.v, result.recovered.K);
    SLProblem sl = assemble_coefficients(model).problem();
    SLSpectrum spec = solve_spectrum_shooting(sl, n_check);

    RoundTripReport rep;
    int N = std::min(n_check, static_cast<int>(prob.target_energies.size()) - 1);
    rep.rel_errors.reserve(N);
    for (int n = 1; n <= N; ++n) {
        double rel = std::abs(spec.energies[n] - prob.target_energies[n]) / prob.target_energies[n];
        rep.rel_errors.push_back(rel);
        rep.max_rel_error = std::max(rep.max_rel_error, rel);
    }
    rep.pwt = classify_pwt(model, spec, nullptr);
    return rep;
}

} // namespace pwt

#include "pwt/overlaps.hpp"

#include "pwt/errors.hpp"
#include "pwt/interp.hpp"
#include "pwt/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace pwt {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cdouble kI{0.0, 1.0};

cdouble kernel_pow(double arg, double eps, double L, double expo, bool plus) {
    if (expo == 0.0) return cdouble{1.0, 0.0};
    const cdouble g = plus ? kernel_plus(arg, eps, L) : kernel_minus(arg, eps, L);
    if (expo == 1.0) return g;
    return std::pow(g, expo); // principal branch
}

struct NodeData {
    std::vector<double> x, w;       // Gauss-Legendre nodes/weights on the channel
    std::vector<double> fb;         // fbar at nodes
    std::vector<double> wpow;       // fprime^(dp+dm) at nodes
    std::vector<cdouble> a2p, a2m;  // bra packet at nodes (conjugated later)
    std::vector<cdouble> a1p, a1m;  // ket packet at nodes
};

NodeData prepare(const WavePacketPair& p, const UnfoldedMap& um, const SystemGeometry& geom,
                 int order, bool bra_is_2, bool ket_is_2) {
    const std::size_t N = static_cast<std::size_t>(geom.grid_points);
    if (p.xi1_plus.size() != N || p.xi1_minus.size() != N || p.xi2_plus.size() != N
        || p.xi2_minus.size() != N)
        throw InconsistentInput("packet samples do not match the grid");
    for (const auto* v : {&p.xi1_plus, &p.xi1_minus, &p.xi2_plus, &p.xi2_minus})
        for (const auto& c : *v)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw InputError("packet samples must be finite");

    const auto rule = gauss_legendre(order);
    const double L = geom.L;
    const double x0 = -0.5 * L, h = geom.spacing();
    NodeData nd;
    nd.x.resize(order);
    nd.w.resize(order);
    nd.fb.resize(order);
    nd.wpow.resize(order);
    nd.a2p.resize(order);
    nd.a2m.resize(order);
    nd.a1p.resize(order);
    nd.a1m.resize(order);
    const double dsum = p.delta_plus + p.delta_minus;
    for (int q = 0; q < order; ++q) {
        const double x = 0.5 * L * rule.nodes[q];
        nd.x[q] = x;
        nd.w[q] = 0.5 * L * rule.weights[q];
        nd.fb[q] = um.f(x);
        nd.wpow[q] = dsum == 0.0 ? 1.0 : std::pow(um.fprime(x), dsum);
        const auto& kp = ket_is_2 ? p.xi2_plus : p.xi1_plus;
        const auto& km = ket_is_2 ? p.xi2_minus : p.xi1_minus;
        nd.a1p[q] = interp_complex(kp, x0, h, x);
        nd.a1m[q] = interp_complex(km, x0, h, x);
        const auto& bp = bra_is_2 ? p.xi2_plus : p.xi1_plus;
        const auto& bm = bra_is_2 ? p.xi2_minus : p.xi1_minus;
        nd.a2p[q] = interp_complex(bp, x0, h, x);
        nd.a2m[q] = interp_complex(bm, x0, h, x);
    }
    return nd;
}

// The shared bilinear form: x2 runs over the bra nodes, x1 over the ket
// nodes; shift = v0bar * t displaces the forward kernel argument by -shift
// and the backward one by +shift.
cdouble bilinear(const NodeData& nd, const WavePacketPair& p, const UnfoldedMap& um,
                 double shift, double eps, int order) {
    const double L = um.L;
    const double fL = um.fL;
    const double tdp = 2.0 * p.delta_plus, tdm = 2.0 * p.delta_minus;
    cdouble total{0.0, 0.0};
    for (int q = 0; q < order; ++q) {
        const double f2 = nd.fb[q];
        const cdouble b2p = std::conj(nd.a2p[q]);
        const cdouble b2m = std::conj(nd.a2m[q]);
        cdouble row{0.0, 0.0};
        for (int r = 0; r < order; ++r) {
            const double f1 = nd.fb[r];
            const cdouble ph = std::exp(kI * (p.k * (nd.x[q] - nd.x[r])));
            const cdouble ps = std::exp(kI * (p.k * (nd.x[q] + nd.x[r])));
            const double d = f2 - f1;
            const double s = f2 + f1 - fL;
            const cdouble t1 = ph * b2p * nd.a1p[r]
                               * kernel_pow(d - shift, eps, L, tdp, true)
                               * kernel_pow(d + shift, eps, L, tdm, false);
            const cdouble t2 = ps * b2p * nd.a1m[r]
                               * kernel_pow(s - shift, eps, L, tdp, true)
                               * kernel_pow(s + shift, eps, L, tdm, false);
            const cdouble t3 = std::conj(ps) * b2m * nd.a1p[r]
                               * kernel_pow(-s - shift, eps, L, tdp, true)
                               * kernel_pow(-s + shift, eps, L, tdm, false);
            const cdouble t4 = std::conj(ph) * b2m * nd.a1m[r]
                               * kernel_pow(-d - shift, eps, L, tdp, true)
                               * kernel_pow(-d + shift, eps, L, tdm, false);
            row += nd.w[r] * nd.wpow[r] * (t1 + t2 + t3 + t4);
        }
        total += nd.w[q] * nd.wpow[q] * row;
    }
    return total / (2.0 * kPi);
}

OverlapValue run(const WavePacketPair& p, const UnfoldedMap& um, const SystemGeometry& geom,
                 double shift, const OverlapOptions& opts, bool bra_is_2, bool ket_is_2) {
    if (2.0 * p.delta_plus >= 2.0 || 2.0 * p.delta_minus >= 2.0)
        throw NonIntegrableWeights("kernel power reaches 2; the regulator limit diverges");
    if (opts.quad_order < 16) throw UsageError("quadrature order below 16");
    double eps = opts.epsilon;
    if (eps <= 0.0) eps = 4.0 * geom.spacing();

    const auto nd = prepare(p, um, geom, opts.quad_order, bra_is_2, ket_is_2);

    OverlapValue out;
    out.eps = eps;
    const double eps_min = opts.extrapolate ? 0.25 * eps : eps;
    if (opts.extrapolate) {
        out.at_eps[0] = bilinear(nd, p, um, shift, eps, opts.quad_order);
        out.at_eps[1] = bilinear(nd, p, um, shift, 0.5 * eps, opts.quad_order);
        out.at_eps[2] = bilinear(nd, p, um, shift, 0.25 * eps, opts.quad_order);
        out.value = (8.0 * out.at_eps[2] - 6.0 * out.at_eps[1] + out.at_eps[0]) / 3.0;
    } else {
        out.at_eps[0] = bilinear(nd, p, um, shift, eps, opts.quad_order);
        out.value = out.at_eps[0];
    }
    const auto nd_half = prepare(p, um, geom, opts.quad_order / 2, bra_is_2, ket_is_2);
    const cdouble coarse = bilinear(nd_half, p, um, shift, eps_min, opts.quad_order / 2);
    const cdouble fine = opts.extrapolate ? out.at_eps[2] : out.at_eps[0];
    out.quad_tol = std::abs(fine - coarse);
    out.at_half = coarse;
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        throw QuadratureFailure("overlap quadrature produced a non-finite value");
    return out;
}

} // namespace

WavePacketPair specular_pair(std::vector<cdouble> xi1_plus, std::vector<cdouble> xi1_minus,
                             double k, double delta_plus, double delta_minus) {
    if (xi1_plus.size() != xi1_minus.size() || xi1_plus.empty())
        throw InconsistentInput("packet sample sizes differ");
    WavePacketPair p;
    const std::size_t N = xi1_plus.size();
    p.xi2_plus.resize(N);
    p.xi2_minus.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        p.xi2_plus[i] = xi1_minus[N - 1 - i]; // xi2+(x) = xi1-(-x)
        p.xi2_minus[i] = xi1_plus[N - 1 - i];
    }
    p.xi1_plus = std::move(xi1_plus);
    p.xi1_minus = std::move(xi1_minus);
    p.k = k;
    p.delta_plus = delta_plus;
    p.delta_minus = delta_minus;
    return p;
}

bool is_specular(const WavePacketPair& p, double tol) {
    const std::size_t N = p.xi1_plus.size();
    if (p.xi1_minus.size() != N || p.xi2_plus.size() != N || p.xi2_minus.size() != N)
        return false;
    double scale = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        scale = std::max({scale, std::abs(p.xi1_plus[i]), std::abs(p.xi1_minus[i])});
    if (scale == 0.0) return true;
    for (std::size_t i = 0; i < N; ++i) {
        if (std::abs(p.xi2_plus[i] - p.xi1_minus[N - 1 - i]) > tol * scale) return false;
        if (std::abs(p.xi2_minus[i] - p.xi1_plus[N - 1 - i]) > tol * scale) return false;
    }
    return true;
}

OverlapValue overlap_norm(const WavePacketPair& packets, const UnfoldedMap& um, int j,
                          const SystemGeometry& geom, const OverlapOptions& opts) {
    if (j != 1 && j != 2) throw UsageError("packet index must be 1 or 2");
    return run(packets, um, geom, 0.0, opts, j == 2, j == 2);
}

OverlapValue overlap_F(const WavePacketPair& packets, const UnfoldedMap& um, double t,
                       const SystemGeometry& geom, const OverlapOptions& opts) {
    if (t < 0.0) throw UsageError("time must be nonnegative");
    OverlapValue out = run(packets, um, geom, um.v0 * t, opts, true, false);
    if (opts.casimir_phase != 0.0)
        out.value *= std::exp(-kI * opts.casimir_phase * t);
    return out;
}

} // namespace pwt

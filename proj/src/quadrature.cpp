#include "pwt/quadrature.hpp"

#include "pwt/errors.hpp"

#include <cmath>
#include <numbers>

namespace pwt {

namespace {

// Kronrod-15 nodes (positive half) and weights, with the embedded Gauss-7
// weights on the shared nodes (odd indices of the Kronrod set).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    double kron = kKronrodWeights[7] * f(c);
    double gauss = kGaussWeights[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double fa = f(c - r * kKronrodNodes[i]);
        const double fb = f(c + r * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * (fa + fb);
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (fa + fb);
    }
    return {r * kron, std::abs(r * (kron - gauss))};
}

double adaptive_rec(const RealFn& f, double a, double b, double tol, int depth, int max_depth) {
    const PanelResult p = gk15(f, a, b);
    if (p.error <= tol || !(p.error > 0.0)) return p.value;
    if (depth >= max_depth)
        throw QuadratureFailure("integrate_adaptive: subdivision limit reached");
    const double c = 0.5 * (a + b);
    return adaptive_rec(f, a, c, 0.5 * tol, depth + 1, max_depth) +
           adaptive_rec(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double integrate_adaptive(const RealFn& f, double a, double b, double rel_tol, double abs_tol,
                          int max_depth) {
    if (a == b) return 0.0;
    const PanelResult first = gk15(f, a, b);
    const double scale = std::max(std::abs(first.value), 1e-300);
    const double tol = std::max(abs_tol, rel_tol * scale);
    if (first.error <= tol) return first.value;
    return adaptive_rec(f, a, b, tol, 0, max_depth);
}

double integrate_tanh_sinh(const RealFn& f, double a, double b, double rel_tol, int max_level) {
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    if (r == 0.0) return 0.0;
    const double half_pi = 0.5 * std::numbers::pi;

    // Contribution of abscissa t = tanh(pi/2 sinh(u)) with weight dt/du.
    // The abscissa is formed as an offset from the nearer endpoint: with
    // o = 1 - |t| = 2 / (1 + e^{2|z|}), x = a + r*o (u < 0) or x = b - r*o,
    // so endpoint distances stay accurate down to the underflow threshold
    // instead of being destroyed by cancellation in c + r*t.
    auto term = [&](double u) -> double {
        const double z = half_pi * std::sinh(u);
        const double sech = 1.0 / std::cosh(z); // 0 on overflow
        const double dt = half_pi * std::cosh(u) * sech * sech;
        if (dt == 0.0) return 0.0;
        const double o = 2.0 / (1.0 + std::exp(2.0 * std::abs(z)));
        if (o == 0.0) return 0.0;
        const double x = (u <= 0.0) ? a + r * o : b - r * o;
        if (x == a || x == b) return 0.0; // offset below endpoint representability
        const double v = f(x);
        if (!std::isfinite(v)) return 0.0;
        return v * dt;
    };

    // Beyond |u| ~ 7.5 the offset o underflows, so the range cap drops only
    // dead terms. Capping by count instead would truncate live tail mass at
    // fine levels and break the nested-sum identity.
    const double u_max = 7.5;

    double h = 1.0;
    double sum = term(0.0);
    for (int k = 1; k * h <= u_max; ++k) {
        const double contrib = term(k * h) + term(-k * h);
        sum += contrib;
        if (k * h > 4.0 && std::abs(contrib) <= 1e-18 * std::abs(sum)) break;
    }
    double prev = sum * h * r;

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (int k = 1; k * h <= u_max; k += 2) { // new (odd) abscissas only
            const double contrib = term(k * h) + term(-k * h);
            add += contrib;
            if (k * h > 4.0 && std::abs(contrib) <= 1e-18 * std::abs(sum + add)) break;
        }
        sum += add;
        const double cur = sum * h * r;
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300) && level >= 3)
            return cur;
        prev = cur;
    }
    return prev;
}

namespace {

// Jacobi polynomial P_n^(a,b) and derivative at x via the three-term recurrence.
double jacobi_eval(int n, double a, double b, double x) {
    if (n == 0) return 1.0;
    double p0 = 1.0;
    double p1 = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * x;
    for (int k = 2; k <= n; ++k) {
        const double c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0);
        const double c2 = (2.0 * k + a + b - 1.0) *
                          ((2.0 * k + a + b) * (2.0 * k + a + b - 2.0) * x + a * a - b * b);
        const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b);
        const double p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double jacobi_deriv(int n, double a, double b, double x) {
    if (n == 0) return 0.0;
    return 0.5 * (n + a + b + 1.0) * jacobi_eval(n - 1, a + 1.0, b + 1.0, x);
}

// Zeros by interlacing: zeros of P_k separate zeros of P_{k+1}, so each level
// brackets every zero of the next. Bisection narrows, Newton polishes.
std::vector<double> jacobi_zeros(int n, double a, double b) {
    std::vector<double> zeros;
    for (int k = 1; k <= n; ++k) {
        std::vector<double> brackets;
        brackets.push_back(-1.0);
        brackets.insert(brackets.end(), zeros.begin(), zeros.end());
        brackets.push_back(1.0);
        std::vector<double> next(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
            double lo = brackets[static_cast<std::size_t>(j)];
            double hi = brackets[static_cast<std::size_t>(j) + 1];
            // Endpoints of the full interval are not zeros; nudge inward.
            double flo_x = (j == 0) ? -1.0 + 1e-14 : lo;
            double fhi_x = (j == k - 1) ? 1.0 - 1e-14 : hi;
            double flo = jacobi_eval(k, a, b, flo_x);
            double fhi = jacobi_eval(k, a, b, fhi_x);
            if (flo == 0.0) { next[static_cast<std::size_t>(j)] = flo_x; continue; }
            if (fhi == 0.0) { next[static_cast<std::size_t>(j)] = fhi_x; continue; }
            double xlo = flo_x, xhi = fhi_x;
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (xlo + xhi);
                const double fm = jacobi_eval(k, a, b, mid);
                if ((fm < 0.0) == (flo < 0.0)) { xlo = mid; flo = fm; }
                else xhi = mid;
            }
            double z = 0.5 * (xlo + xhi);
            for (int it = 0; it < 4; ++it) {
                const double fz = jacobi_eval(k, a, b, z);
                const double dz = jacobi_deriv(k, a, b, z);
                if (dz == 0.0) break;
                const double step = fz / dz;
                const double cand = z - step;
                if (cand <= xlo || cand >= xhi) break;
                z = cand;
                if (std::abs(step) < 1e-16) break;
            }
            next[static_cast<std::size_t>(j)] = z;
        }
        zeros = std::move(next);
    }
    return zeros;
}

} // namespace

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw InconsistentInput("gauss_legendre: order must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double pi = std::numbers::pi;
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence with derivative via the standard identity.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

QuadratureRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw InconsistentInput("gauss_jacobi: order must be >= 1");
    if (a <= -1.0 || b <= -1.0)
        throw InconsistentInput("gauss_jacobi: exponents must exceed -1");
    QuadratureRule rule;
    rule.nodes = jacobi_zeros(n, a, b);
    rule.weights.resize(static_cast<std::size_t>(n));
    const double log_c = (a + b + 1.0) * std::numbers::ln2 + std::lgamma(n + a + 1.0) +
                         std::lgamma(n + b + 1.0) - std::lgamma(n + 1.0) -
                         std::lgamma(n + a + b + 1.0);
    const double c = std::exp(log_c);
    for (int i = 0; i < n; ++i) {
        const double x = rule.nodes[static_cast<std::size_t>(i)];
        const double dp = jacobi_deriv(n, a, b, x);
        rule.weights[static_cast<std::size_t>(i)] = c / ((1.0 - x * x) * dp * dp);
    }
    // Self-check against the exact zeroth moment 2^(a+b+1) B(a+1, b+1).
    double total = 0.0;
    for (double w : rule.weights) total += w;
    const double moment = std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                                   std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
    if (std::abs(total - moment) > 1e-10 * moment)
        throw QuadratureFailure("gauss_jacobi: weight self-check failed");
    return rule;
}

} // namespace pwt

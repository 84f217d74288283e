#ifndef PWT_QUADRATURE_HPP
#define PWT_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace pwt {

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7-15 on [a, b]. All evaluation points are interior.
// Throws QuadratureFailure when the subdivision limit is reached above tol.
double integrate_adaptive(const RealFn& f, double a, double b, double rel_tol = 1e-12,
                          double abs_tol = 0.0, int max_depth = 45);

// Tanh-sinh (double-exponential) quadrature on [a, b]; robust for integrable
// endpoint singularities. Never evaluates the endpoints themselves.
double integrate_tanh_sinh(const RealFn& f, double a, double b, double rel_tol = 1e-12,
                           int max_level = 12);

struct QuadratureRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

// Gauss-Legendre rule, exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

// Gauss-Jacobi rule for weight (1-x)^a (1+x)^b, a, b > -1.
QuadratureRule gauss_jacobi(int n, double a, double b);

} // namespace pwt

#endif

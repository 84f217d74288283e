#ifndef PWT_TRIDIAG_HPP
#define PWT_TRIDIAG_HPP

#include <vector>

namespace pwt {

// Symmetric tridiagonal matrix; off has one entry fewer than diag.
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;
};

// Number of eigenvalues strictly below x (Sturm sequence count).
int sturm_count(const Tridiag& T, double x);

// Ascending eigenvalues with indices 0..n_max, bisected until the bracket
// width falls below rel_tol * |lambda| plus a norm-scaled floor.
std::vector<double> tridiag_eigenvalues(const Tridiag& T, int n_max, double rel_tol = 4e-15);

// Reduce the generalized pencil T u = lambda D u (D diagonal, positive) to
// standard symmetric form D^{-1/2} T D^{-1/2}.
Tridiag reduce_generalized(const Tridiag& T, const std::vector<double>& D);

} // namespace pwt

#endif

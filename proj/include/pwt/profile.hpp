#ifndef PWT_PROFILE_HPP
#define PWT_PROFILE_HPP

#include "pwt/grid.hpp"
#include "pwt/interp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pwt {

enum class ProfileKind { Constant, SqrtProfile, PowerProfile, CosineSeries, Tabulated };

enum class ParityClass { Even, Odd, Neither };

// Descriptor for a coefficient profile on [-L/2, L/2]. Closed forms are
// stored structurally so parity and regularity can be decided exactly;
// tabulated data falls back to numerics.
class ProfileFn {
  public:
    static ProfileFn constant(double c);
    // v * sqrt(1 - (2x/L)^2)
    static ProfileFn sqrt_profile(double v);
    // K * (1 - (2x/L)^2)^alpha, alpha > -1/2 in the intended family; the
    // descriptor itself allows any exponent (q-terms use negative powers).
    static ProfileFn power_profile(double K, double alpha);
    // c[0] + sum_k c[k] * cos(k*pi*x/L); odd k allows nonzero endpoint slope.
    static ProfileFn cosine_series(std::vector<double> coeffs);
    // Samples on the uniform grid over [-L/2, L/2]; odd count, order 1 or 3.
    static ProfileFn tabulated(std::vector<double> samples, double L, int order = 3);

    double eval(double x, double L) const;
    // First derivative: analytic for closed forms, interpolant slope otherwise.
    double deriv(double x, double L) const;

    // Same profile scaled by a constant factor (exact, kind-preserving).
    ProfileFn scaled(double factor) const;

    ProfileKind kind() const { return m_kind; }
    const std::vector<double>& coefficients() const { return m_coeffs; }
    bool structurally_even() const { return m_kind != ProfileKind::Tabulated; }
    int tab_order() const { return m_order; }
    std::string describe() const;

  private:
    ProfileKind m_kind = ProfileKind::Constant;
    std::vector<double> m_coeffs{1.0}; // interpretation depends on kind
    UniformInterp m_interp;            // tabulated only
    double m_tab_L = 0.0;
    int m_order = 3;
};

struct ParityReport {
    ParityClass cls = ParityClass::Neither;
    double defect_even = 0.0; // max |p(x) - p(-x)| / max |p|
    double defect_odd = 0.0;  // max |p(x) + p(-x)| / max |p|
};

// Grid-based parity classification; exact for symmetric sample vectors
// because the grid is a bitwise reflection involution.
ParityReport parity_check(const ProfileFn& p, const SystemGeometry& geom,
                          double threshold = 1e-10);

// Strictly positive, finite evaluation; throws SingularValue otherwise,
// naming the offending coefficient when given.
double eval_strict_positive(const ProfileFn& p, double x, double L, const char* name = "");

} // namespace pwt

#endif

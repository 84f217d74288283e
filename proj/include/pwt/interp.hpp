#ifndef PWT_INTERP_HPP
#define PWT_INTERP_HPP

#include <complex>
#include <vector>

namespace pwt {

// Piecewise polynomial interpolation of samples on a uniform grid over
// [x0, x0 + (n-1)*h]. order 1 = linear, order 3 = cubic (4-point Lagrange,
// stencil clamped at the ends). When the sample vector is symmetric,
// evaluation commutes with reflection to rounding error (the stencil
// mirrors exactly; only the summation order differs).
class UniformInterp {
  public:
    UniformInterp() = default;
    UniformInterp(std::vector<double> samples, double x0, double h, int order = 3);

    double eval(double x) const;
    double deriv(double x) const;

    double x0() const { return m_x0; }
    double h() const { return m_h; }
    const std::vector<double>& samples() const { return m_samples; }

  private:
    std::vector<double> m_samples;
    double m_x0 = 0.0;
    double m_h = 1.0;
    int m_order = 3;
};

std::complex<double> interp_complex(const std::vector<std::complex<double>>& samples, double x0,
                                    double h, double x);

// Strictly monotone sampled map with a bracketed-Newton inverse.
class MonotoneMap {
  public:
    MonotoneMap() = default;
    MonotoneMap(std::vector<double> x_samples_uniform_start, double x0, double h,
                std::vector<double> y_samples);

    double forward(double x) const { return m_fwd.eval(x); }
    double deriv(double x) const { return m_fwd.deriv(x); }
    double inverse(double y) const;

    double x_min() const { return m_x0; }
    double x_max() const { return m_x0 + (m_n - 1) * m_h; }
    double y_min() const { return m_y.front(); }
    double y_max() const { return m_y.back(); }

  private:
    UniformInterp m_fwd;
    std::vector<double> m_y;
    double m_x0 = 0.0;
    double m_h = 1.0;
    int m_n = 0;
};

} // namespace pwt

#endif

#ifndef PWT_OVERLAPS_HPP
#define PWT_OVERLAPS_HPP

#include "pwt/correlators.hpp"
#include "pwt/grid.hpp"
#include "pwt/unfold.hpp"

#include <complex>
#include <vector>

namespace pwt {

// Chirality-resolved packet pair sampled on the shared grid, with a common
// momentum offset and conformal weights. The specular partner of packet 1 is
// xi2_plus(x) = xi1_minus(-x), xi2_minus(x) = xi1_plus(-x).
struct WavePacketPair {
    std::vector<cdouble> xi1_plus, xi1_minus, xi2_plus, xi2_minus;
    double k = 0.0;
    double delta_plus = 0.5; // free-fermion defaults
    double delta_minus = 0.0;
};

// Builds the pair from packet 1 by the specular reflection rule.
WavePacketPair specular_pair(std::vector<cdouble> xi1_plus, std::vector<cdouble> xi1_minus,
                             double k, double delta_plus = 0.5, double delta_minus = 0.0);

bool is_specular(const WavePacketPair& p, double tol = 1e-12);

struct OverlapOptions {
    double epsilon = 0.0;       // regulator; 0 picks 4 grid spacings
    int quad_order = 128;       // Gauss-Legendre nodes per axis
    bool extrapolate = true;    // Richardson over eps, eps/2, eps/4
    double casimir_phase = 0.0; // multiplies F(t) by exp(-i C t)
};

struct OverlapValue {
    cdouble value{0.0, 0.0};   // extrapolated (or single-eps) result
    double quad_tol = 0.0;     // node-halving estimate at the smallest eps
    double eps = 0.0;          // largest regulator of the sweep
    cdouble at_eps[3];         // raw values at eps, eps/2, eps/4
    cdouble at_half{0.0, 0.0}; // half-order raw value at the smallest eps
};

// Norm <Phi_j|Phi_j> of packet j: the four-term double integral over the
// channel with both kernel arguments at equal times. Throws
// NonIntegrableWeights when a squared weight reaches the kernel power 2.
OverlapValue overlap_norm(const WavePacketPair& packets, const UnfoldedMap& um, int j,
                          const SystemGeometry& geom, const OverlapOptions& opts = {});

// Transfer amplitude F(t) = <Phi_2| exp(-i H t) |Phi_1>: same bilinear form
// with the forward kernel argument shifted by -v0 t and the backward one by
// +v0 t.
OverlapValue overlap_F(const WavePacketPair& packets, const UnfoldedMap& um, double t,
                       const SystemGeometry& geom, const OverlapOptions& opts = {});

} // namespace pwt

#endif

#pragma once

#include <array>
#include <complex>

#include "tpjc/params.hpp"

namespace tpjc {

using complexd = std::complex<double>;

/// Atomic levels in descending energy. The enum value doubles as the photon
/// offset inside an excitation manifold: the manifold with index n contains
/// |e,n>, |f,n+1>, |g,n+2>.
enum class AtomLevel : int { e = 0, f = 1, g = 2 };

constexpr int level_offset(AtomLevel k) { return static_cast<int>(k); }

constexpr std::array<AtomLevel, 3> all_levels() {
    return {AtomLevel::e, AtomLevel::f, AtomLevel::g};
}

char level_name(AtomLevel k);

/// Index of the invariant subspace {|e,n>, |f,n+1>, |g,n+2>}. Components
/// with negative photon number are absent: n >= 0 is three-dimensional,
/// n = -1 couples |f,0> <-> |g,1> only, and n = -2 is the stationary |g,0>.
struct ManifoldIndex {
    int n = 0;

    int dimension() const {
        if (n >= 0) return 3;
        return n == -1 ? 2 : 1;
    }
    bool level_present(AtomLevel k) const { return n + level_offset(k) >= 0; }
};

using Mat3 = std::array<complexd, 9>;  // row-major, rows/cols ordered (e, f, g)

Mat3 mat_identity();
Mat3 mat_mul(const Mat3& a, const Mat3& b);
Mat3 mat_dagger(const Mat3& a);
double mat_max_abs_diff(const Mat3& a, const Mat3& b);

/// Unitary evolution of one excitation manifold over [start_time, end_time]
/// in the interaction picture. Acts on column vectors ordered (e, f, g);
/// slots of absent levels hold Kronecker deltas so entries is always 3x3.
struct ManifoldPropagator {
    ManifoldIndex manifold;
    double start_time = 0.0;
    double duration = 0.0;
    PhysicalParams params;
    Mat3 entries = mat_identity();

    complexd entry(AtomLevel out, AtomLevel in) const {
        return entries[3 * level_offset(out) + level_offset(in)];
    }
    int dimension() const { return manifold.dimension(); }
};

/// sqrt(g1^2 (n+1) + g2^2 (n+2)), the manifold coupling strength.
/// Requires n >= -1; the dark manifold n = -2 has no coupling.
double alpha_n(const PhysicalParams& params, ManifoldIndex m);

/// Rabi frequency sqrt(delta^2/4 + alpha_n^2). Requires n >= -1.
double lambda_n(const PhysicalParams& params, ManifoldIndex m);

/// [Lambda cos(Lambda t) + i (delta/2) sin(Lambda t) - Lambda e^{i delta t/2}]
/// e^{-i delta t/2}; vanishes at t = 0. Requires n >= -1.
complexd gamma_n(const PhysicalParams& params, ManifoldIndex m, double t);

/// Closed-form propagator over [0, t]. Column k is the image of a unit
/// amplitude that starts in level k of the manifold.
ManifoldPropagator manifold_propagator(const PhysicalParams& params, ManifoldIndex m, double t);

/// Closed-form propagator over [t0, t1]. The drive phases refer to absolute
/// time, so this is not a function of t1 - t0 alone; propagators compose as
/// U(0 -> t1) followed by U(t1 -> t1 + t2).
ManifoldPropagator manifold_propagator(const PhysicalParams& params, ManifoldIndex m, double t0,
                                       double t1);

}  // namespace tpjc

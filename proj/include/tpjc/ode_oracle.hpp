#pragma once

#include <array>

#include "tpjc/manifold.hpp"

namespace tpjc {

/// Amplitudes (c_e, c_f, c_g) of one excitation manifold at a given absolute
/// time. Components of absent levels must stay exactly zero.
struct ManifoldAmplitudes {
    ManifoldIndex manifold;
    double time = 0.0;
    std::array<complexd, 3> c{};

    double norm_sq() const;
    double norm() const;
};

/// Brute-force integration of the driven amplitude equations
///   c_e' = -i g1 sqrt(n+1) e^{-i delta t} c_f
///   c_f' = -i g1 sqrt(n+1) e^{+i delta t} c_e - i g2 sqrt(n+2) e^{+i delta t} c_g
///   c_g' = -i g2 sqrt(n+2) e^{-i delta t} c_f
/// with classical fixed-step RK4 from initial.time to t_final (either
/// direction); the last step is shortened to land exactly on t_final.
/// Norm is preserved to 1e-8 as long as max_step * lambda_n <= 0.05.
/// Throws std::domain_error for non-normalized input or nonpositive step.
ManifoldAmplitudes integrate_manifold(const PhysicalParams& params, const ManifoldAmplitudes& initial,
                                      double t_final, double max_step);

}  // namespace tpjc

#pragma once

#include <numbers>
#include <stdexcept>

namespace tpjc {

/// Whether rates are given as radian frequencies or cycle frequencies.
/// Cyclic values are multiplied by 2*pi before use; all internal math works
/// with radian-frequency x time phases.
enum class FrequencyConvention { angular, cyclic };

/// Coupling rates and detuning of the two-photon ladder. g1 couples
/// |e> <-> |f>, g2 couples |f> <-> |g>, all in one unit system (per
/// microsecond throughout the CLI). delta may have either sign.
struct PhysicalParams {
    double g1 = 0.0;
    double g2 = 0.0;
    double delta = 0.0;
    FrequencyConvention convention = FrequencyConvention::angular;

    double unit_scale() const {
        return convention == FrequencyConvention::angular ? 1.0 : 2.0 * std::numbers::pi;
    }
    double g1_rad() const { return g1 * unit_scale(); }
    double g2_rad() const { return g2 * unit_scale(); }
    double delta_rad() const { return delta * unit_scale(); }

    void validate() const {
        if (!(g1 >= 0.0) || !(g2 >= 0.0))
            throw std::domain_error("coupling rates must be nonnegative finite values");
        if (delta != delta)
            throw std::domain_error("detuning must not be NaN");
    }
};

}  // namespace tpjc

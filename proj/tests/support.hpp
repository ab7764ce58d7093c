#pragma once

// Self-contained helpers for the test suite. The generator is a local
// splitmix64 so test draws never depend on library or libstdc++ internals.

#include <cstdint>
#include <map>

#include "tpjc/state.hpp"

namespace testsup {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int pick(std::initializer_list<int> values) {
        return values.begin()[next() % values.size()];
    }

private:
    std::uint64_t state_;
};

inline tpjc::PhysicalParams random_params(Rng& rng) {
    tpjc::PhysicalParams p;
    p.g1 = rng.range(0.1, 50.0);
    p.g2 = rng.range(0.1, 50.0);
    const double g = std::max(p.g1, p.g2);
    p.delta = rng.range(-50.0 * g, 50.0 * g);
    return p;
}

/// Distribution over the photon numbers of all cavities except `cavity`,
/// summed over atom levels and that cavity's photon number.
inline std::map<tpjc::PhotonTuple, double> marginal_without(const tpjc::JointState& state,
                                                            int cavity) {
    std::map<tpjc::PhotonTuple, double> marginal;
    for (const auto& [key, amp] : state.amplitudes()) {
        tpjc::PhotonTuple reduced;
        for (int i = 0; i < state.n_cavities(); ++i)
            if (i != cavity) reduced.push_back(key.photons[static_cast<std::size_t>(i)]);
        marginal[reduced] += std::norm(amp);
    }
    return marginal;
}

/// Entangled but normalized state produced by random passes from
/// |e> x |vacuum>.
inline tpjc::JointState random_protocol_state(Rng& rng, const tpjc::PhysicalParams& params,
                                              int n_cavities, int n_passes) {
    tpjc::JointState state = tpjc::make_initial_state(tpjc::AtomLevel::e, n_cavities);
    for (int i = 0; i < n_passes; ++i) {
        const int cavity = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n_cavities));
        state = tpjc::apply_cavity_pass(state, params, cavity, rng.range(0.0, 40.0));
    }
    return state;
}

}  // namespace testsup

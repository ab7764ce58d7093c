#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "tpjc/manifold.hpp"

namespace tpjc {

/// Photon numbers per cavity, index = cavity.
using PhotonTuple = std::vector<int>;

struct StateKey {
    AtomLevel level = AtomLevel::e;
    PhotonTuple photons;

    friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

/// Sparse joint state of the atom and N cavity modes: a map from
/// (atom level, photon tuple) to complex amplitude. Absent keys are exact
/// zeros; populated kets stay within the truncation n_max per cavity, which
/// is raised automatically when an operation produces a higher photon number.
class JointState {
public:
    JointState(int n_cavities, int n_max = 2);

    int n_cavities() const { return n_cavities_; }
    int n_max() const { return n_max_; }
    std::size_t size() const { return amps_.size(); }

    complexd amplitude(const StateKey& key) const;
    /// Accumulates into the keyed amplitude; erases the entry when the sum
    /// is exactly zero.
    void add(const StateKey& key, complexd value);

    double norm_sq() const;
    double norm() const;

    const std::map<StateKey, complexd>& amplitudes() const { return amps_; }

private:
    void check_key(const StateKey& key) const;

    int n_cavities_;
    int n_max_;
    std::map<StateKey, complexd> amps_;
};

/// Field state after projecting the atom onto one level, with the detection
/// probability and the normalization constant 1/sqrt(probability) that was
/// applied to the surviving amplitudes.
struct CollapsedState {
    std::map<PhotonTuple, complexd> field_amplitudes;
    double probability = 0.0;
    double normalization = 0.0;
};

/// |atom level> x |vacuum...>: a single unit amplitude.
JointState make_initial_state(AtomLevel atom, int n_cavities, int n_max = 2);

/// Evolves the (atom, one cavity) pair for the given duration, leaving
/// spectator cavities untouched. Amplitudes are grouped into excitation
/// manifolds of the pair and propagated with the closed-form solution.
JointState apply_cavity_pass(const JointState& state, const PhysicalParams& params, int cavity,
                             double duration);

/// Projects the atom onto the given level. Returns the renormalized field
/// state, or nullopt when the branch probability is below 1e-14.
std::optional<CollapsedState> project_atom(const JointState& state, AtomLevel level);

}  // namespace tpjc

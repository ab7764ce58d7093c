#pragma once

#include <map>
#include <optional>
#include <string>

#include "tpjc/state.hpp"

namespace tpjc {

/// Basis of a target's tuples: photon numbers per cavity, or abstract qubit
/// labels (0/1 per site) for the one-parameter W class.
enum class TargetBasis { photon_number, qubit };

struct TargetState {
    std::map<PhotonTuple, complexd> amplitudes;
    TargetBasis basis = TargetBasis::photon_number;
    std::string label;

    double norm_sq() const;
    double norm() const;
};

/// (|02> + |20>)/sqrt(2) over two cavities.
TargetState target_epr();

/// (|002> + |020> + sqrt(2)|200>)/2 over three cavities.
TargetState target_w_two_photon();

/// (|001> + sqrt(zeta) e^{i gamma} |010> + sqrt(zeta+1) e^{i delta} |100>)
/// / sqrt(2 + 2 zeta) in the qubit basis; the delta here is a phase, not the
/// detuning. Requires zeta >= 0.
TargetState target_w_zeta(double zeta, double gamma_phase, double delta_phase);

/// Maps a qubit-basis target into photon numbers with 0 -> vacuum and
/// 1 -> two photons, making it comparable against generated field states.
TargetState to_photon_encoding(const TargetState& target);

/// <target | field>, summed over the sparse supports.
complexd field_overlap(const TargetState& target,
                       const std::map<PhotonTuple, complexd>& field_amplitudes);

struct DetectionFidelity {
    double probability = 0.0;
    std::optional<double> fidelity;  // nullopt when the detection branch is empty
};

/// Projects the atom, then returns |<target|collapsed field>|^2 together
/// with the detection probability.
DetectionFidelity fidelity_post_selected(const JointState& state, AtomLevel detect,
                                         const TargetState& target);

/// <target| Tr_atom(|state><state|) |target>: the overlap with the reduced
/// field state when no atomic detection is performed.
double fidelity_no_detection(const JointState& state, const TargetState& target);

}  // namespace tpjc

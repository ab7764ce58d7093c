#include "tpjc/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace tpjc {

namespace {
const complexd kI{0.0, 1.0};
}

double TargetState::norm_sq() const {
    double total = 0.0;
    for (const auto& [key, amp] : amplitudes) total += std::norm(amp);
    return total;
}

double TargetState::norm() const { return std::sqrt(norm_sq()); }

TargetState target_epr() {
    TargetState t;
    t.label = "epr";
    const double w = 1.0 / std::sqrt(2.0);
    t.amplitudes[{0, 2}] = w;
    t.amplitudes[{2, 0}] = w;
    return t;
}

TargetState target_w_two_photon() {
    TargetState t;
    t.label = "w";
    t.amplitudes[{0, 0, 2}] = 0.5;
    t.amplitudes[{0, 2, 0}] = 0.5;
    t.amplitudes[{2, 0, 0}] = std::sqrt(2.0) / 2.0;
    return t;
}

TargetState target_w_zeta(double zeta, double gamma_phase, double delta_phase) {
    if (!(zeta >= 0.0)) throw std::domain_error("zeta must be nonnegative");
    TargetState t;
    t.basis = TargetBasis::qubit;
    t.label = "w_zeta";
    const double scale = 1.0 / std::sqrt(2.0 + 2.0 * zeta);
    t.amplitudes[{0, 0, 1}] = scale;
    t.amplitudes[{0, 1, 0}] = scale * std::sqrt(zeta) * std::exp(kI * gamma_phase);
    t.amplitudes[{1, 0, 0}] = scale * std::sqrt(zeta + 1.0) * std::exp(kI * delta_phase);
    return t;
}

TargetState to_photon_encoding(const TargetState& target) {
    if (target.basis != TargetBasis::qubit)
        throw std::invalid_argument("target is already photon-number encoded");
    TargetState out;
    out.basis = TargetBasis::photon_number;
    out.label = target.label;
    for (const auto& [key, amp] : target.amplitudes) {
        PhotonTuple photons(key.size());
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] != 0 && key[i] != 1)
                throw std::invalid_argument("qubit labels must be 0 or 1");
            photons[i] = key[i] == 0 ? 0 : 2;
        }
        out.amplitudes[photons] = amp;
    }
    return out;
}

complexd field_overlap(const TargetState& target,
                       const std::map<PhotonTuple, complexd>& field_amplitudes) {
    complexd overlap = 0.0;
    for (const auto& [key, amp] : target.amplitudes) {
        auto it = field_amplitudes.find(key);
        if (it != field_amplitudes.end()) overlap += std::conj(amp) * it->second;
    }
    return overlap;
}

DetectionFidelity fidelity_post_selected(const JointState& state, AtomLevel detect,
                                         const TargetState& target) {
    const std::optional<CollapsedState> collapsed = project_atom(state, detect);
    if (!collapsed) return {0.0, std::nullopt};
    const double fidelity = std::norm(field_overlap(target, collapsed->field_amplitudes));
    return {collapsed->probability, fidelity};
}

double fidelity_no_detection(const JointState& state, const TargetState& target) {
    // Per atom level, the unnormalized branch overlap; squares add because
    // distinct atom levels are orthogonal in the reduced field state.
    double total = 0.0;
    for (AtomLevel level : all_levels()) {
        complexd overlap = 0.0;
        for (const auto& [key, amp] : target.amplitudes) {
            const complexd branch_amp = state.amplitude({level, key});
            overlap += std::conj(amp) * branch_amp;
        }
        total += std::norm(overlap);
    }
    return total;
}

}  // namespace tpjc

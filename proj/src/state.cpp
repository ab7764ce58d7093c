#include "tpjc/state.hpp"

#include <cmath>
#include <stdexcept>

namespace tpjc {

JointState::JointState(int n_cavities, int n_max) : n_cavities_(n_cavities), n_max_(n_max) {
    if (n_cavities < 1) throw std::invalid_argument("need at least one cavity");
    if (n_max < 0) throw std::invalid_argument("truncation must be nonnegative");
}

void JointState::check_key(const StateKey& key) const {
    if (static_cast<int>(key.photons.size()) != n_cavities_)
        throw std::invalid_argument("photon tuple length does not match cavity count");
    for (int n : key.photons)
        if (n < 0) throw std::invalid_argument("photon numbers must be nonnegative");
}

complexd JointState::amplitude(const StateKey& key) const {
    auto it = amps_.find(key);
    return it == amps_.end() ? complexd{0.0, 0.0} : it->second;
}

void JointState::add(const StateKey& key, complexd value) {
    check_key(key);
    for (int n : key.photons) n_max_ = std::max(n_max_, n);
    auto [it, inserted] = amps_.try_emplace(key, value);
    if (!inserted) it->second += value;
    if (it->second == complexd{0.0, 0.0}) amps_.erase(it);
}

double JointState::norm_sq() const {
    double total = 0.0;
    for (const auto& [key, amp] : amps_) total += std::norm(amp);
    return total;
}

double JointState::norm() const { return std::sqrt(norm_sq()); }

JointState make_initial_state(AtomLevel atom, int n_cavities, int n_max) {
    JointState state(n_cavities, n_max);
    state.add({atom, PhotonTuple(static_cast<std::size_t>(n_cavities), 0)}, 1.0);
    return state;
}

JointState apply_cavity_pass(const JointState& state, const PhysicalParams& params, int cavity,
                             double duration) {
    params.validate();
    if (cavity < 0 || cavity >= state.n_cavities())
        throw std::out_of_range("cavity index out of range");
    if (!(duration >= 0.0)) throw std::domain_error("pass duration must be nonnegative");

    JointState out(state.n_cavities(), state.n_max());
    std::map<int, ManifoldPropagator> cache;
    for (const auto& [key, amp] : state.amplitudes()) {
        const int n = key.photons[static_cast<std::size_t>(cavity)] - level_offset(key.level);
        auto it = cache.find(n);
        if (it == cache.end())
            it = cache.emplace(n, manifold_propagator(params, ManifoldIndex{n}, duration)).first;
        const ManifoldPropagator& u = it->second;

        StateKey target = key;
        for (AtomLevel out_level : all_levels()) {
            if (!u.manifold.level_present(out_level)) continue;
            const complexd coeff = u.entry(out_level, key.level);
            if (coeff == complexd{0.0, 0.0}) continue;
            target.level = out_level;
            target.photons[static_cast<std::size_t>(cavity)] = n + level_offset(out_level);
            out.add(target, amp * coeff);
        }
    }
    return out;
}

std::optional<CollapsedState> project_atom(const JointState& state, AtomLevel level) {
    double probability = 0.0;
    for (const auto& [key, amp] : state.amplitudes())
        if (key.level == level) probability += std::norm(amp);
    if (probability < 1e-14) return std::nullopt;  // empty detection branch

    CollapsedState collapsed;
    collapsed.probability = probability;
    collapsed.normalization = 1.0 / std::sqrt(probability);
    for (const auto& [key, amp] : state.amplitudes())
        if (key.level == level)
            collapsed.field_amplitudes.emplace(key.photons, amp * collapsed.normalization);
    return collapsed;
}

}  // namespace tpjc

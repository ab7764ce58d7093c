#include "tpjc/protocol.hpp"

#include <stdexcept>

namespace tpjc {

void ProtocolSpec::validate() const {
    params.validate();
    if (n_cavities < 1) throw std::invalid_argument("need at least one cavity");
    if (n_max < 0) throw std::invalid_argument("truncation must be nonnegative");
    for (const CavityPass& pass : passes) {
        if (pass.cavity < 0 || pass.cavity >= n_cavities)
            throw std::invalid_argument("pass cavity index out of range");
        if (!(pass.duration >= 0.0))
            throw std::invalid_argument("pass durations must be nonnegative");
    }
}

ProtocolRun run_protocol(const ProtocolSpec& spec) {
    spec.validate();
    JointState state = make_initial_state(spec.initial_atom, spec.n_cavities, spec.n_max);
    for (const CavityPass& pass : spec.passes)
        state = apply_cavity_pass(state, spec.params, pass.cavity, pass.duration);

    ProtocolRun run{std::move(state), std::nullopt, false};
    if (spec.detection) {
        run.collapsed = project_atom(run.state, *spec.detection);
        run.branch_empty = !run.collapsed.has_value();
    }
    return run;
}

ProtocolSpec epr_protocol(const PhysicalParams& params, double t1, double t2) {
    ProtocolSpec spec;
    spec.params = params;
    spec.initial_atom = AtomLevel::e;
    spec.n_cavities = 2;
    spec.passes = {{0, t1}, {1, t2}};
    spec.detection = AtomLevel::g;
    return spec;
}

ProtocolSpec w_protocol(const PhysicalParams& params, double t1, double t2, double t3) {
    ProtocolSpec spec;
    spec.params = params;
    spec.initial_atom = AtomLevel::e;
    spec.n_cavities = 3;
    spec.passes = {{0, t1}, {1, t2}, {2, t3}};
    spec.detection = AtomLevel::g;
    return spec;
}

PhysicalParams paper2009_params(FrequencyConvention convention) {
    PhysicalParams p;
    p.g1 = 17.5;
    p.g2 = 17.5;
    p.delta = 30.0 * p.g1;
    p.convention = convention;
    return p;
}

}  // namespace tpjc

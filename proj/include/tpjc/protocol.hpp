#pragma once

#include <optional>
#include <vector>

#include "tpjc/state.hpp"

namespace tpjc {

struct CavityPass {
    int cavity = 0;
    double duration = 0.0;  // same time unit as 1/frequency (microseconds in the CLI)
};

/// Ordered single-cavity passes of one atom through a chain of
/// vacuum-prepared cavities, with an optional terminal atomic detection.
struct ProtocolSpec {
    PhysicalParams params;
    AtomLevel initial_atom = AtomLevel::e;
    int n_cavities = 1;
    std::vector<CavityPass> passes;
    std::optional<AtomLevel> detection = AtomLevel::g;
    int n_max = 2;

    void validate() const;
};

struct ProtocolRun {
    JointState state;  // joint state before detection
    std::optional<CollapsedState> collapsed;
    bool branch_empty = false;  // detection requested but the branch has no weight
};

/// Prepares |initial_atom> x |vacuum...>, applies each pass in order, then
/// the optional atomic projection. Deterministic.
ProtocolRun run_protocol(const ProtocolSpec& spec);

/// Two cavities, passes (cavity 1, t1) then (cavity 2, t2), atom starts in
/// |e>, detection on |g>.
ProtocolSpec epr_protocol(const PhysicalParams& params, double t1, double t2);

/// Three cavities, passes t1, t2, t3, atom starts in |e>, detection on |g>.
ProtocolSpec w_protocol(const PhysicalParams& params, double t1, double t2, double t3);

/// Default parameter set used throughout: g1 = g2 = 17.5 per microsecond,
/// delta = 30 g. The convention flag selects how the 17.5 is read.
PhysicalParams paper2009_params(FrequencyConvention convention = FrequencyConvention::angular);

}  // namespace tpjc

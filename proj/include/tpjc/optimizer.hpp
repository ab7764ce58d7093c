#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tpjc/metrics.hpp"
#include "tpjc/protocol.hpp"

namespace tpjc {

/// Inclusive uniform grid over [start, stop] with the given point count;
/// points == 1 collapses to {start}.
struct TimeGrid {
    double start = 0.0;
    double stop = 0.0;
    int points = 1;

    void validate() const;
    std::vector<double> values() const;
};

enum class Objective { fidelity, fidelity_no_detection };

/// One evaluated time tuple. fidelity_defined is false when the detection
/// branch is empty under the fidelity objective; such records are excluded
/// from argmax and render as "nan" in CSV.
struct SweepRecord {
    std::vector<double> times;
    double fidelity = 0.0;
    double probability = 0.0;
    bool fidelity_defined = false;
};

struct SweepResult {
    std::vector<TimeGrid> axes;
    std::vector<SweepRecord> records;  // row-major over the axes, first axis slowest
    std::optional<std::size_t> best_index;
};

/// Replaces the pass durations of the template (pass i gets times[i]) and
/// evaluates the objective and detection probability.
SweepRecord evaluate_times(const ProtocolSpec& spec_template, const std::vector<double>& times,
                           Objective objective, const TargetState& target);

/// Full grid evaluation, parallelized with OpenMP when available. Records
/// are merged by grid index, so the output is identical to sweep_serial
/// regardless of thread count.
SweepResult sweep(const ProtocolSpec& spec_template, const std::vector<TimeGrid>& grids,
                  Objective objective, const TargetState& target);

/// Reference implementation of sweep without threading, kept for tests and
/// benchmarks.
SweepResult sweep_serial(const ProtocolSpec& spec_template, const std::vector<TimeGrid>& grids,
                         Objective objective, const TargetState& target);

struct TimeBounds {
    double lo = 0.0;
    double hi = 0.0;
};

struct OptimizeOptions {
    int coarse_points = 64;             // coarse grid resolution per axis
    int bracket_points = 9;             // probes per axis per refinement round
    double bracket_stop_fraction = 1e-3;  // stop when bracket < this fraction of the bound width
    std::optional<double> min_probability;
};

struct OptimizeResult {
    SweepRecord best;
    int rounds = 0;
    std::size_t evaluations = 0;
};

/// Coarse grid scan followed by bracket-halving coordinate refinement.
/// Deterministic; ties break toward the lexicographically smallest time
/// tuple; the result never scores below any feasible coarse grid point.
/// Throws std::runtime_error when no point satisfies min_probability.
OptimizeResult optimize_times(const ProtocolSpec& spec_template,
                              const std::vector<TimeBounds>& bounds, const TargetState& target,
                              Objective objective, const OptimizeOptions& options = {});

}  // namespace tpjc

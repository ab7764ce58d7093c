#include "tpjc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tpjc {

namespace {

// Strict ordering used for argmax: defined beats undefined, higher objective
// beats lower, lexicographically smaller times win ties.
bool record_improves(const SweepRecord& candidate, const SweepRecord& incumbent) {
    if (!candidate.fidelity_defined) return false;
    if (!incumbent.fidelity_defined) return true;
    if (candidate.fidelity != incumbent.fidelity) return candidate.fidelity > incumbent.fidelity;
    return candidate.times < incumbent.times;
}

bool feasible(const SweepRecord& record, const std::optional<double>& min_probability) {
    if (!record.fidelity_defined) return false;
    return !min_probability || record.probability >= *min_probability;
}

ProtocolSpec with_times(const ProtocolSpec& spec_template, const std::vector<double>& times) {
    ProtocolSpec spec = spec_template;
    for (std::size_t i = 0; i < times.size(); ++i) spec.passes[i].duration = times[i];
    return spec;
}

std::vector<double> times_at(const std::vector<std::vector<double>>& axes, std::size_t flat) {
    std::vector<double> times(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        times[k] = axes[k][flat % axes[k].size()];
        flat /= axes[k].size();
    }
    return times;
}

SweepResult sweep_impl(const ProtocolSpec& spec_template, const std::vector<TimeGrid>& grids,
                       Objective objective, const TargetState& target, bool parallel) {
    spec_template.validate();
    if (grids.empty() || grids.size() != spec_template.passes.size())
        throw std::invalid_argument("need one time grid per pass");
    for (const TimeGrid& grid : grids) grid.validate();
    if (objective == Objective::fidelity && !spec_template.detection)
        throw std::invalid_argument("fidelity objective needs a detection level");

    SweepResult result;
    result.axes = grids;
    std::vector<std::vector<double>> axes;
    std::size_t total = 1;
    for (const TimeGrid& grid : grids) {
        axes.push_back(grid.values());
        total *= axes.back().size();
    }
    result.records.resize(total);

    const auto body = [&](std::size_t i) {
        result.records[i] = evaluate_times(spec_template, times_at(axes, i), objective, target);
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(total); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < total; ++i) body(i);
    }

    for (std::size_t i = 0; i < total; ++i) {
        if (!result.records[i].fidelity_defined) continue;
        if (!result.best_index ||
            record_improves(result.records[i], result.records[*result.best_index]))
            result.best_index = i;
    }
    return result;
}

}  // namespace

void TimeGrid::validate() const {
    if (points < 1) throw std::invalid_argument("grid needs at least one point");
    if (!(start >= 0.0) || !(stop >= start))
        throw std::invalid_argument("grid requires 0 <= start <= stop");
    if (points > 1 && stop == start)
        throw std::invalid_argument("multi-point grid needs start < stop");
}

std::vector<double> TimeGrid::values() const {
    validate();
    std::vector<double> v(static_cast<std::size_t>(points));
    if (points == 1) {
        v[0] = start;
        return v;
    }
    for (int i = 0; i < points; ++i)
        v[static_cast<std::size_t>(i)] = start + (stop - start) * i / (points - 1);
    return v;
}

SweepRecord evaluate_times(const ProtocolSpec& spec_template, const std::vector<double>& times,
                           Objective objective, const TargetState& target) {
    if (times.size() != spec_template.passes.size())
        throw std::invalid_argument("need one time per pass");
    const ProtocolSpec spec = with_times(spec_template, times);
    const ProtocolRun run = run_protocol(spec);

    SweepRecord record;
    record.times = times;
    const AtomLevel detect = spec.detection.value_or(AtomLevel::g);
    if (objective == Objective::fidelity) {
        const DetectionFidelity result = fidelity_post_selected(run.state, detect, target);
        record.probability = result.probability;
        record.fidelity_defined = result.fidelity.has_value();
        record.fidelity = result.fidelity.value_or(std::nan(""));
    } else {
        record.fidelity = fidelity_no_detection(run.state, target);
        record.fidelity_defined = true;
        const std::optional<CollapsedState> collapsed = project_atom(run.state, detect);
        record.probability = collapsed ? collapsed->probability : 0.0;
    }
    return record;
}

SweepResult sweep(const ProtocolSpec& spec_template, const std::vector<TimeGrid>& grids,
                  Objective objective, const TargetState& target) {
    return sweep_impl(spec_template, grids, objective, target, true);
}

SweepResult sweep_serial(const ProtocolSpec& spec_template, const std::vector<TimeGrid>& grids,
                         Objective objective, const TargetState& target) {
    return sweep_impl(spec_template, grids, objective, target, false);
}

OptimizeResult optimize_times(const ProtocolSpec& spec_template,
                              const std::vector<TimeBounds>& bounds, const TargetState& target,
                              Objective objective, const OptimizeOptions& options) {
    if (bounds.empty() || bounds.size() != spec_template.passes.size())
        throw std::invalid_argument("need one bounds interval per pass");
    for (const TimeBounds& b : bounds)
        if (!(b.lo >= 0.0) || !(b.hi >= b.lo))
            throw std::invalid_argument("bounds require 0 <= lo <= hi");
    if (options.coarse_points < 1 || options.bracket_points < 2)
        throw std::invalid_argument("bad optimizer options");
    if (options.min_probability && (*options.min_probability < 0.0 || *options.min_probability > 1.0))
        throw std::invalid_argument("min_probability must be in [0, 1]");

    std::vector<TimeGrid> coarse;
    for (const TimeBounds& b : bounds) {
        const int points = b.hi > b.lo ? options.coarse_points : 1;
        coarse.push_back({b.lo, b.hi, points});
    }
    const SweepResult scan = sweep(spec_template, coarse, objective, target);

    OptimizeResult result;
    result.evaluations = scan.records.size();
    bool have_incumbent = false;
    for (const SweepRecord& record : scan.records) {
        if (!feasible(record, options.min_probability)) continue;
        if (!have_incumbent || record_improves(record, result.best)) {
            result.best = record;
            have_incumbent = true;
        }
    }
    if (!have_incumbent) throw std::runtime_error("no feasible point under the probability floor");

    // Coordinate refinement: probe a shrinking bracket around the incumbent
    // on each axis in turn, halving the bracket every round. The incumbent
    // only ever improves, so the coarse-scan winner is always dominated.
    std::vector<double> width(bounds.size());
    for (std::size_t k = 0; k < bounds.size(); ++k)
        width[k] = bounds[k].hi > bounds[k].lo
                       ? (bounds[k].hi - bounds[k].lo) / (options.coarse_points - 1)
                       : 0.0;

    bool any_active = true;
    while (any_active) {
        any_active = false;
        for (std::size_t k = 0; k < bounds.size(); ++k) {
            const double range = bounds[k].hi - bounds[k].lo;
            if (width[k] <= 0.0 || width[k] < options.bracket_stop_fraction * range) continue;
            any_active = true;
            for (int j = 0; j < options.bracket_points; ++j) {
                std::vector<double> probe = result.best.times;
                double x = probe[k] - width[k] +
                           2.0 * width[k] * j / (options.bracket_points - 1);
                x = std::clamp(x, bounds[k].lo, bounds[k].hi);
                probe[k] = x;
                const SweepRecord candidate = evaluate_times(spec_template, probe, objective, target);
                ++result.evaluations;
                if (feasible(candidate, options.min_probability) &&
                    record_improves(candidate, result.best))
                    result.best = candidate;
            }
            width[k] /= 2.0;
        }
        if (any_active) ++result.rounds;
    }
    return result;
}

}  // namespace tpjc

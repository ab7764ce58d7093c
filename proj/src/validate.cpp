#include "tpjc/validate.hpp"

#include <cmath>

#include "tpjc/metrics.hpp"
#include "tpjc/ode_oracle.hpp"
#include "tpjc/protocol.hpp"

namespace tpjc {

namespace closed_form {

PassEntries pass_entries(const PhysicalParams& params, double t) {
    const ManifoldPropagator full = manifold_propagator(params, ManifoldIndex{0}, t);
    const ManifoldPropagator low = manifold_propagator(params, ManifoldIndex{-1}, t);
    return {full.entry(AtomLevel::e, AtomLevel::e), full.entry(AtomLevel::f, AtomLevel::e),
            full.entry(AtomLevel::g, AtomLevel::e), low.entry(AtomLevel::f, AtomLevel::f),
            low.entry(AtomLevel::g, AtomLevel::f)};
}

EprMetrics epr_metrics(const PhysicalParams& params, double t1, double t2) {
    const PassEntries a = pass_entries(params, t1);
    const PassEntries b = pass_entries(params, t2);
    const double probability = std::norm(a.e0_from_e0) * std::norm(b.g2_from_e0) +
                               std::norm(a.f1_from_e0) * std::norm(b.g1_from_f0) +
                               std::norm(a.g2_from_e0);
    const complexd target_sum = a.e0_from_e0 * b.g2_from_e0 + a.g2_from_e0;
    const double fidelity_no_detection = 0.5 * std::norm(target_sum);
    return {probability, fidelity_no_detection / probability, fidelity_no_detection};
}

WMetrics w_metrics(const PhysicalParams& params, double t1, double t2, double t3) {
    const PassEntries a = pass_entries(params, t1);
    const PassEntries b = pass_entries(params, t2);
    const PassEntries c = pass_entries(params, t3);
    const double probability =
        std::norm(a.e0_from_e0) * std::norm(b.e0_from_e0) * std::norm(c.g2_from_e0) +
        std::norm(a.e0_from_e0) * std::norm(b.f1_from_e0) * std::norm(c.g1_from_f0) +
        std::norm(a.e0_from_e0) * std::norm(b.g2_from_e0) +
        std::norm(a.f1_from_e0) * std::norm(b.f0_from_f0) * std::norm(c.g1_from_f0) +
        std::norm(a.f1_from_e0) * std::norm(b.g1_from_f0) + std::norm(a.g2_from_e0);
    const complexd target_sum = a.e0_from_e0 * b.e0_from_e0 * c.g2_from_e0 +
                                a.e0_from_e0 * b.g2_from_e0 +
                                std::sqrt(2.0) * a.g2_from_e0;
    return {probability, std::norm(target_sum) / (4.0 * probability)};
}

}  // namespace closed_form

namespace {

struct Draw {
    PhysicalParams params;
    ManifoldIndex manifold;
};

Draw random_manifold(UniformRng& rng) {
    PhysicalParams p;
    p.g1 = rng.range(0.1, 50.0);
    p.g2 = rng.range(0.1, 50.0);
    const double g = std::max(p.g1, p.g2);
    p.delta = rng.range(-50.0 * g, 50.0 * g);
    static constexpr int kIndices[5] = {-1, 0, 1, 2, 5};
    return {p, ManifoldIndex{kIndices[rng.integer(5)]}};
}

ValidationCheck check_unitarity(const ValidationOptions& options) {
    ValidationCheck check{"unitarity", options.unitarity_trials, 0.0, 1e-10, false};
    UniformRng rng(options.seed ^ 0x01ull);
    for (int i = 0; i < options.unitarity_trials; ++i) {
        const Draw draw = random_manifold(rng);
        const double lam = lambda_n(draw.params, draw.manifold);
        const double t = rng.range(0.0, 1e3 / lam);
        ManifoldPropagator u = manifold_propagator(draw.params, draw.manifold, t);
        u.entries[0] += options.perturbation;
        const double residual =
            mat_max_abs_diff(mat_mul(mat_dagger(u.entries), u.entries), mat_identity());
        check.max_residual = std::max(check.max_residual, residual);
    }
    check.passed = check.max_residual <= check.tolerance;
    return check;
}

ValidationCheck check_composition(const ValidationOptions& options) {
    ValidationCheck check{"composition", options.unitarity_trials, 0.0, 1e-10, false};
    UniformRng rng(options.seed ^ 0x02ull);
    for (int i = 0; i < options.unitarity_trials; ++i) {
        Draw draw = random_manifold(rng);
        // every few draws: resonant case, where the propagator is also a
        // one-parameter semigroup in the duration alone
        const bool resonant = i % 5 == 0;
        if (resonant) draw.params.delta = 0.0;
        const double lam = lambda_n(draw.params, draw.manifold);
        const double t1 = rng.range(0.0, 500.0 / lam);
        const double t2 = rng.range(0.0, 500.0 / lam);
        const ManifoldPropagator whole = manifold_propagator(draw.params, draw.manifold, t1 + t2);
        const ManifoldPropagator first = manifold_propagator(draw.params, draw.manifold, t1);
        const ManifoldPropagator second =
            resonant ? manifold_propagator(draw.params, draw.manifold, t2)
                     : manifold_propagator(draw.params, draw.manifold, t1, t1 + t2);
        const double residual =
            mat_max_abs_diff(whole.entries, mat_mul(second.entries, first.entries));
        check.max_residual = std::max(check.max_residual, residual);
    }
    check.passed = check.max_residual <= check.tolerance;
    return check;
}

ValidationCheck check_oracle(const ValidationOptions& options) {
    ValidationCheck check{"closed form vs RK4", options.oracle_trials, 0.0, 1e-8, false};
    UniformRng rng(options.seed ^ 0x03ull);
    for (int i = 0; i < options.oracle_trials; ++i) {
        const Draw draw = random_manifold(rng);
        const double lam = lambda_n(draw.params, draw.manifold);
        const double t = rng.range(0.0, 20.0 / lam);
        const double max_step = 0.004 / lam;
        const ManifoldPropagator u = manifold_propagator(draw.params, draw.manifold, t);
        for (AtomLevel column : all_levels()) {
            if (!draw.manifold.level_present(column)) continue;
            ManifoldAmplitudes initial{draw.manifold, 0.0, {}};
            initial.c[level_offset(column)] = 1.0;
            const ManifoldAmplitudes integrated =
                integrate_manifold(draw.params, initial, t, max_step);
            for (AtomLevel row : all_levels()) {
                if (!draw.manifold.level_present(row)) continue;
                const double residual =
                    std::abs(integrated.c[level_offset(row)] - u.entry(row, column));
                check.max_residual = std::max(check.max_residual, residual);
            }
        }
    }
    check.passed = check.max_residual <= check.tolerance;
    return check;
}

ValidationCheck check_resonance(const ValidationOptions& options) {
    ValidationCheck check{"resonant analytic solution", 0, 0.0, 1e-12, false};
    UniformRng rng(options.seed ^ 0x04ull);
    for (int i = 0; i < 50; ++i) {
        PhysicalParams p;
        p.g1 = p.g2 = rng.range(0.1, 30.0);
        p.delta = 0.0;
        const double t = rng.range(0.0, 10.0 / p.g1);
        const ManifoldPropagator u = manifold_propagator(p, ManifoldIndex{0}, t);
        const double root3 = std::sqrt(3.0);
        const complexd expected =
            (std::sqrt(2.0) / 3.0) * (std::cos(root3 * p.g1 * t) - 1.0);
        const double residual = std::abs(u.entry(AtomLevel::g, AtomLevel::e) - expected);
        check.max_residual = std::max(check.max_residual, residual);
        ++check.cases;
    }
    // peak of the two-photon transfer: |amplitude|^2 = 8/9 at sqrt(3) g t = pi
    {
        PhysicalParams p;
        p.g1 = p.g2 = 17.5;
        p.delta = 0.0;
        const double t = std::numbers::pi / (std::sqrt(3.0) * p.g1);
        const ManifoldPropagator u = manifold_propagator(p, ManifoldIndex{0}, t);
        const double residual =
            std::abs(std::norm(u.entry(AtomLevel::g, AtomLevel::e)) - 8.0 / 9.0);
        check.max_residual = std::max(check.max_residual, residual);
        ++check.cases;
    }
    check.passed = check.max_residual <= check.tolerance;
    return check;
}

ValidationCheck check_branches(const ValidationOptions& options) {
    ValidationCheck check{"branch completeness", options.protocol_trials, 0.0, 1e-10, false};
    UniformRng rng(options.seed ^ 0x05ull);
    const PhysicalParams params = paper2009_params();
    for (int i = 0; i < options.protocol_trials; ++i) {
        const bool three = i % 2 == 0;
        ProtocolSpec spec =
            three ? w_protocol(params, rng.range(0.0, 40.0), rng.range(0.0, 40.0),
                               rng.range(0.0, 40.0))
                  : epr_protocol(params, rng.range(0.0, 40.0), rng.range(0.0, 40.0));
        spec.detection.reset();
        const ProtocolRun run = run_protocol(spec);
        double total = 0.0;
        for (AtomLevel level : all_levels()) {
            const std::optional<CollapsedState> branch = project_atom(run.state, level);
            if (branch) total += branch->probability;
        }
        check.max_residual = std::max(check.max_residual, std::abs(total - 1.0));
        check.max_residual = std::max(check.max_residual, std::abs(run.state.norm() - 1.0));
    }
    check.passed = check.max_residual <= check.tolerance;
    return check;
}

ValidationCheck check_structural_identity(const ValidationOptions& options) {
    ValidationCheck check{"structural identity of metrics", options.identity_trials, 0.0, 1e-10,
                          false};
    UniformRng rng(options.seed ^ 0x06ull);
    const PhysicalParams params = paper2009_params();
    const TargetState epr = target_epr();
    const TargetState w = target_w_two_photon();
    for (int i = 0; i < options.identity_trials; ++i) {
        const double t1 = rng.range(0.01, 40.0);
        const double t2 = rng.range(0.01, 40.0);
        const double t3 = rng.range(0.01, 40.0);
        {
            const ProtocolRun run = run_protocol(epr_protocol(params, t1, t2));
            const closed_form::EprMetrics expected = closed_form::epr_metrics(params, t1, t2);
            const DetectionFidelity actual = fidelity_post_selected(run.state, AtomLevel::g, epr);
            check.max_residual =
                std::max(check.max_residual, std::abs(actual.probability - expected.probability));
            if (actual.fidelity)
                check.max_residual =
                    std::max(check.max_residual, std::abs(*actual.fidelity - expected.fidelity));
            check.max_residual =
                std::max(check.max_residual, std::abs(fidelity_no_detection(run.state, epr) -
                                                      expected.fidelity_no_detection));
        }
        {
            const ProtocolRun run = run_protocol(w_protocol(params, t1, t2, t3));
            const closed_form::WMetrics expected = closed_form::w_metrics(params, t1, t2, t3);
            const DetectionFidelity actual = fidelity_post_selected(run.state, AtomLevel::g, w);
            check.max_residual =
                std::max(check.max_residual, std::abs(actual.probability - expected.probability));
            if (actual.fidelity)
                check.max_residual =
                    std::max(check.max_residual, std::abs(*actual.fidelity - expected.fidelity));
        }
    }
    check.passed = check.max_residual <= check.tolerance;
    return check;
}

}  // namespace

std::vector<ValidationCheck> run_validation(const ValidationOptions& options) {
    return {check_unitarity(options),  check_composition(options),
            check_oracle(options),     check_resonance(options),
            check_branches(options),   check_structural_identity(options)};
}

bool all_passed(const std::vector<ValidationCheck>& checks) {
    for (const ValidationCheck& check : checks)
        if (!check.passed) return false;
    return true;
}

}  // namespace tpjc

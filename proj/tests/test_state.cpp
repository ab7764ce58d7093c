#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "tpjc/protocol.hpp"
#include "tpjc/state.hpp"

using namespace tpjc;

TEST_CASE("initial product states") {
    const JointState two = make_initial_state(AtomLevel::e, 2);
    CHECK(two.size() == 1);
    CHECK(two.amplitude({AtomLevel::e, {0, 0}}) == complexd{1.0, 0.0});
    CHECK(two.norm() == doctest::Approx(1.0).epsilon(1e-15));

    const JointState three = make_initial_state(AtomLevel::g, 3);
    CHECK(three.amplitude({AtomLevel::g, {0, 0, 0}}) == complexd{1.0, 0.0});
    CHECK(three.n_cavities() == 3);

    CHECK_THROWS_AS(make_initial_state(AtomLevel::e, 0), std::invalid_argument);
}

TEST_CASE("amplitude bookkeeping") {
    JointState state(2);
    state.add({AtomLevel::f, {1, 0}}, {0.5, 0.5});
    state.add({AtomLevel::f, {1, 0}}, {-0.5, -0.5});
    CHECK(state.size() == 0);  // exact cancellation removes the key

    CHECK_THROWS_AS(state.add({AtomLevel::f, {1}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(state.add({AtomLevel::f, {-1, 0}}, 1.0), std::invalid_argument);

    state.add({AtomLevel::g, {4, 0}}, 1.0);
    CHECK(state.n_max() == 4);  // truncation rises with the stored photons
}

TEST_CASE("zero-duration pass is the identity") {
    const PhysicalParams params = paper2009_params();
    testsup::Rng rng(31);
    const JointState state = testsup::random_protocol_state(rng, params, 2, 3);
    const JointState after = apply_cavity_pass(state, params, 0, 0.0);
    CHECK(after.amplitudes() == state.amplitudes());
}

TEST_CASE("single pass from the excited atom") {
    const PhysicalParams params = paper2009_params();
    const double t1 = 2.4;
    const JointState state =
        apply_cavity_pass(make_initial_state(AtomLevel::e, 2), params, 0, t1);

    const ManifoldPropagator u = manifold_propagator(params, {0}, t1);
    CHECK(state.size() == 3);
    CHECK(std::abs(state.amplitude({AtomLevel::e, {0, 0}}) - u.entry(AtomLevel::e, AtomLevel::e)) <=
          1e-15);
    CHECK(std::abs(state.amplitude({AtomLevel::f, {1, 0}}) - u.entry(AtomLevel::f, AtomLevel::e)) <=
          1e-15);
    CHECK(std::abs(state.amplitude({AtomLevel::g, {2, 0}}) - u.entry(AtomLevel::g, AtomLevel::e)) <=
          1e-15);
    CHECK(std::abs(state.norm() - 1.0) <= 1e-12);
}

TEST_CASE("pass on a spectator-dark ket leaves it alone") {
    const PhysicalParams params = paper2009_params();
    JointState state(2);
    state.add({AtomLevel::g, {2, 0}}, 1.0);
    // atom in |g> with the target cavity in vacuum: the dark manifold
    const JointState after = apply_cavity_pass(state, params, 1, 7.7);
    CHECK(after.amplitude({AtomLevel::g, {2, 0}}) == complexd{1.0, 0.0});
    CHECK(after.size() == 1);
}

TEST_CASE("pass reaching above the default truncation raises it") {
    const PhysicalParams params = paper2009_params();
    JointState state(1);
    state.add({AtomLevel::e, {2}}, 1.0);  // four-photon manifold member
    const JointState after = apply_cavity_pass(state, params, 0, 1.0);
    CHECK(after.n_max() == 4);
    CHECK(std::abs(after.amplitude({AtomLevel::g, {4}})) > 0.0);
}

TEST_CASE("norm preserved through random pass sequences") {
    const PhysicalParams params = paper2009_params();
    testsup::Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const JointState state = testsup::random_protocol_state(rng, params, 3, 6);
        CHECK(std::abs(state.norm() - 1.0) <= 1e-10);
    }
}

TEST_CASE("a pass never disturbs the other cavities' marginals") {
    const PhysicalParams params = paper2009_params();
    testsup::Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        const JointState state = testsup::random_protocol_state(rng, params, 3, 4);
        const int cavity = static_cast<int>(rng.next() % 3);
        const auto before = testsup::marginal_without(state, cavity);
        const JointState after = apply_cavity_pass(state, params, cavity, rng.range(0.0, 40.0));
        const auto post = testsup::marginal_without(after, cavity);
        for (const auto& [reduced, weight] : before) {
            auto it = post.find(reduced);
            const double other = it == post.end() ? 0.0 : it->second;
            CHECK(std::abs(weight - other) <= 1e-12);
        }
    }
}

TEST_CASE("excitation never exceeds the initial two quanta") {
    const PhysicalParams params = paper2009_params();
    testsup::Rng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        const JointState state = testsup::random_protocol_state(rng, params, 3, 6);
        for (const auto& [key, amp] : state.amplitudes()) {
            int excitation = 2 - level_offset(key.level);
            for (int n : key.photons) excitation += n;
            CHECK(excitation == 2);  // exact: passes conserve the quantum number
        }
    }
}

TEST_CASE("projection splits the state into exhaustive branches") {
    const PhysicalParams params = paper2009_params();
    testsup::Rng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const JointState state = testsup::random_protocol_state(rng, params, 2, 3);
        double total = 0.0;
        for (AtomLevel level : all_levels()) {
            const auto branch = project_atom(state, level);
            if (!branch) continue;
            total += branch->probability;
            double norm_sq = 0.0;
            for (const auto& [photons, amp] : branch->field_amplitudes) norm_sq += std::norm(amp);
            CHECK(std::abs(norm_sq - 1.0) <= 1e-10);
            CHECK(branch->normalization ==
                  doctest::Approx(1.0 / std::sqrt(branch->probability)).epsilon(1e-12));
        }
        CHECK(std::abs(total - 1.0) <= 1e-10);
    }
}

TEST_CASE("projection of a product state") {
    const JointState state = make_initial_state(AtomLevel::e, 2);
    const auto same = project_atom(state, AtomLevel::e);
    REQUIRE(same.has_value());
    CHECK(same->probability == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(same->field_amplitudes.at({0, 0}) == complexd{1.0, 0.0});
    CHECK_FALSE(project_atom(state, AtomLevel::g).has_value());
}

TEST_CASE("pass argument validation") {
    const PhysicalParams params = paper2009_params();
    const JointState state = make_initial_state(AtomLevel::e, 2);
    CHECK_THROWS_AS(apply_cavity_pass(state, params, 2, 1.0), std::out_of_range);
    CHECK_THROWS_AS(apply_cavity_pass(state, params, -1, 1.0), std::out_of_range);
    CHECK_THROWS_AS(apply_cavity_pass(state, params, 0, -1.0), std::domain_error);
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpjc/manifold.hpp"
#include "tpjc/params.hpp"

namespace tpjc {

/// Deterministic uniform generator used by the validation checks; raw
/// mt19937_64 bits scaled into doubles so sequences do not depend on
/// library distribution internals.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : state_(seed) {}

    double unit() {  // in [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::uint64_t integer(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t next() {  // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
};

/// Hand-expanded coefficient products for the two protocols, written
/// directly in terms of single-pass propagator entries. These deliberately
/// bypass the joint-state machinery so the two routes can be compared.
namespace closed_form {

struct PassEntries {
    complexd e0_from_e0;  // |e,0> -> |e,0>
    complexd f1_from_e0;  // |e,0> -> |f,1>
    complexd g2_from_e0;  // |e,0> -> |g,2>
    complexd f0_from_f0;  // |f,0> -> |f,0>
    complexd g1_from_f0;  // |f,0> -> |g,1>
};

PassEntries pass_entries(const PhysicalParams& params, double t);

struct EprMetrics {
    double probability;      // detection of |g|
    double fidelity;         // post-selected against (|02> + |20>)/sqrt(2)
    double fidelity_no_detection;
};
EprMetrics epr_metrics(const PhysicalParams& params, double t1, double t2);

struct WMetrics {
    double probability;
    double fidelity;  // post-selected against (|002> + |020> + sqrt(2)|200>)/2
};
WMetrics w_metrics(const PhysicalParams& params, double t1, double t2, double t3);

}  // namespace closed_form

struct ValidationCheck {
    std::string name;
    long cases = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct ValidationOptions {
    std::uint64_t seed = 0x7051c2d3e4f5a6b7ull;
    int unitarity_trials = 2000;
    int oracle_trials = 25;
    int identity_trials = 400;
    int protocol_trials = 200;
    double perturbation = 0.0;  // test hook: offsets one propagator entry
};

/// Runs the internal consistency suite: unitarity, the propagator
/// composition law, closed form vs RK4 integration, the resonant analytic
/// solution, detection-branch completeness, and the structural identity of
/// overlap-based metrics with the expanded coefficient products.
std::vector<ValidationCheck> run_validation(const ValidationOptions& options = {});

bool all_passed(const std::vector<ValidationCheck>& checks);

}  // namespace tpjc

#include "tpjc/manifold.hpp"

#include <cmath>

namespace tpjc {

namespace {
const complexd kI{0.0, 1.0};

double clamped_sqrt(int arg) { return arg > 0 ? std::sqrt(static_cast<double>(arg)) : 0.0; }

void require_coupled(ManifoldIndex m) {
    if (m.n < -1) throw std::domain_error("dark manifold has no coupling (n <= -2)");
}
}  // namespace

char level_name(AtomLevel k) {
    switch (k) {
        case AtomLevel::e: return 'e';
        case AtomLevel::f: return 'f';
        case AtomLevel::g: return 'g';
    }
    return '?';
}

Mat3 mat_identity() { return {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0}; }

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            complexd s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[3 * i + k] * b[3 * k + j];
            c[3 * i + j] = s;
        }
    return c;
}

Mat3 mat_dagger(const Mat3& a) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c[3 * i + j] = std::conj(a[3 * j + i]);
    return c;
}

double mat_max_abs_diff(const Mat3& a, const Mat3& b) {
    double worst = 0.0;
    for (int i = 0; i < 9; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double alpha_n(const PhysicalParams& params, ManifoldIndex m) {
    params.validate();
    require_coupled(m);
    const double a = params.g1_rad() * clamped_sqrt(m.n + 1);
    const double b = params.g2_rad() * clamped_sqrt(m.n + 2);
    return std::sqrt(a * a + b * b);
}

double lambda_n(const PhysicalParams& params, ManifoldIndex m) {
    const double alpha = alpha_n(params, m);
    const double half_delta = params.delta_rad() / 2.0;
    return std::sqrt(half_delta * half_delta + alpha * alpha);
}

complexd gamma_n(const PhysicalParams& params, ManifoldIndex m, double t) {
    const double lam = lambda_n(params, m);
    const double half_delta = params.delta_rad() / 2.0;
    const complexd drift = std::exp(kI * half_delta * t);
    return (lam * std::cos(lam * t) + kI * half_delta * std::sin(lam * t) - lam * drift) *
           std::conj(drift);
}

ManifoldPropagator manifold_propagator(const PhysicalParams& params, ManifoldIndex m, double t) {
    params.validate();
    if (m.n < -2) throw std::domain_error("manifold index must be >= -2");
    if (!(t >= 0.0)) throw std::domain_error("propagator duration must be nonnegative");

    ManifoldPropagator u{m, 0.0, t, params, mat_identity()};
    if (m.n == -2) return u;  // |g,0> is stationary in the interaction picture

    const double a = params.g1_rad() * clamped_sqrt(m.n + 1);
    const double b = params.g2_rad() * clamped_sqrt(m.n + 2);
    const double alpha_sq = a * a + b * b;
    if (alpha_sq == 0.0) return u;  // uncoupled manifold: amplitudes are constant

    const double half_delta = params.delta_rad() / 2.0;
    const double lam = std::sqrt(half_delta * half_delta + alpha_sq);
    const double c = std::cos(lam * t);
    const double s = std::sin(lam * t);
    const complexd drift = std::exp(kI * half_delta * t);  // e^{i delta t / 2}
    const complexd gam = (lam * c + kI * half_delta * s - lam * drift) * std::conj(drift);
    const complexd shared = gam / (lam * alpha_sq);

    Mat3& e = u.entries;
    e[0] = 1.0 + a * a * shared;
    e[1] = -kI * (a / lam) * s * std::conj(drift);
    e[2] = a * b * shared;
    e[3] = -kI * (a / lam) * s * drift;
    e[4] = (c - kI * (half_delta / lam) * s) * drift;
    e[5] = -kI * (b / lam) * s * drift;
    e[6] = a * b * shared;
    e[7] = -kI * (b / lam) * s * std::conj(drift);
    e[8] = 1.0 + b * b * shared;
    return u;
}

ManifoldPropagator manifold_propagator(const PhysicalParams& params, ManifoldIndex m, double t0,
                                       double t1) {
    if (!(t0 >= 0.0) || !(t1 >= t0)) throw std::domain_error("require 0 <= t0 <= t1");
    ManifoldPropagator late = manifold_propagator(params, m, t1);
    if (t0 == 0.0) return late;
    const ManifoldPropagator early = manifold_propagator(params, m, t0);
    ManifoldPropagator u{m, t0, t1 - t0, params, mat_mul(late.entries, mat_dagger(early.entries))};
    return u;
}

}  // namespace tpjc

#include "tpjc/ode_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace tpjc {

namespace {
const complexd kI{0.0, 1.0};

using Vec3 = std::array<complexd, 3>;

struct Couplings {
    double a = 0.0;  // g1 sqrt(n+1), zero when the e slot is absent
    double b = 0.0;  // g2 sqrt(n+2), zero when the f slot is absent
    double delta = 0.0;
};

Vec3 derivative(const Couplings& k, double t, const Vec3& y) {
    const complexd down = std::exp(-kI * k.delta * t);
    const complexd up = std::conj(down);
    return {-kI * k.a * down * y[1], -kI * k.a * up * y[0] - kI * k.b * up * y[2],
            -kI * k.b * down * y[1]};
}
}  // namespace

double ManifoldAmplitudes::norm_sq() const {
    return std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
}

double ManifoldAmplitudes::norm() const { return std::sqrt(norm_sq()); }

ManifoldAmplitudes integrate_manifold(const PhysicalParams& params, const ManifoldAmplitudes& initial,
                                      double t_final, double max_step) {
    params.validate();
    const ManifoldIndex m = initial.manifold;
    if (m.n < -2) throw std::domain_error("manifold index must be >= -2");
    if (!(max_step > 0.0)) throw std::domain_error("max_step must be positive");
    if (std::abs(initial.norm() - 1.0) > 1e-12)
        throw std::domain_error("initial amplitudes must be normalized");
    for (AtomLevel k : all_levels())
        if (!m.level_present(k) && initial.c[level_offset(k)] != 0.0)
            throw std::domain_error("amplitude of an absent manifold component must be zero");

    ManifoldAmplitudes out = initial;
    out.time = t_final;
    if (m.n == -2) return out;  // no coupling term: the dark state is constant

    Couplings k;
    k.a = m.n + 1 > 0 ? params.g1_rad() * std::sqrt(static_cast<double>(m.n + 1)) : 0.0;
    k.b = m.n + 2 > 0 ? params.g2_rad() * std::sqrt(static_cast<double>(m.n + 2)) : 0.0;
    k.delta = params.delta_rad();

    const double span = t_final - initial.time;
    if (span == 0.0) return out;
    const long steps = std::max<long>(1, static_cast<long>(std::ceil(std::abs(span) / max_step)));
    const double h = span / static_cast<double>(steps);

    Vec3 y = initial.c;
    for (long i = 0; i < steps; ++i) {
        const double t = initial.time + static_cast<double>(i) * h;
        const Vec3 k1 = derivative(k, t, y);
        Vec3 tmp;
        for (int j = 0; j < 3; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
        const Vec3 k2 = derivative(k, t + 0.5 * h, tmp);
        for (int j = 0; j < 3; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
        const Vec3 k3 = derivative(k, t + 0.5 * h, tmp);
        for (int j = 0; j < 3; ++j) tmp[j] = y[j] + h * k3[j];
        const Vec3 k4 = derivative(k, t + h, tmp);
        for (int j = 0; j < 3; ++j)
            y[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    out.c = y;
    return out;
}

}  // namespace tpjc

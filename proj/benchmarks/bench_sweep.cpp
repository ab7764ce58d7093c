// Times the OpenMP sweep kernel against the serial reference on the two
// stock protocols and confirms the outputs are identical.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tpjc/optimizer.hpp"

using namespace tpjc;

namespace {

double time_ms(const std::function<SweepResult()>& work, SweepResult& out) {
    const auto start = std::chrono::steady_clock::now();
    out = work();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

double max_record_diff(const SweepResult& a, const SweepResult& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        worst = std::max(worst, std::abs(a.records[i].fidelity - b.records[i].fidelity));
        worst = std::max(worst, std::abs(a.records[i].probability - b.records[i].probability));
    }
    return worst;
}

void bench(const char* name, const ProtocolSpec& spec, const std::vector<TimeGrid>& grids,
           Objective objective, const TargetState& target) {
    SweepResult serial, parallel;
    const double serial_ms =
        time_ms([&] { return sweep_serial(spec, grids, objective, target); }, serial);
    const double parallel_ms = time_ms([&] { return sweep(spec, grids, objective, target); }, parallel);
    std::printf("%-24s %8zu points   serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   max|diff| %g\n",
                name, serial.records.size(), serial_ms, parallel_ms, serial_ms / parallel_ms,
                max_record_diff(serial, parallel));
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both kernels run serially\n");
#endif
    const PhysicalParams params = paper2009_params();
    bench("epr detection", epr_protocol(params, 0.0, 0.0), {{0.0, 40.0, 301}, {0.0, 40.0, 301}},
          Objective::fidelity, target_epr());
    bench("epr no detection", epr_protocol(params, 0.0, 0.0), {{0.0, 40.0, 301}, {0.0, 40.0, 301}},
          Objective::fidelity_no_detection, target_epr());
    bench("w detection", w_protocol(params, 0.0, 0.0, 0.0),
          {{0.0, 40.0, 41}, {0.0, 40.0, 41}, {0.0, 40.0, 41}}, Objective::fidelity,
          target_w_two_photon());
    return 0;
}

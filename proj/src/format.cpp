#include "tpjc/format.hpp"

#include <cmath>
#include <cstdio>

namespace tpjc {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const std::vector<std::string>& axis_names,
                     const std::string& config_comment) {
    if (!config_comment.empty()) out << "# config " << config_comment << "\n";
    for (const std::string& name : axis_names) out << name << ",";
    out << "fidelity,probability\n";
    for (const SweepRecord& record : result.records) {
        for (double t : record.times) out << format_number(t) << ",";
        out << (record.fidelity_defined ? format_number(record.fidelity) : "nan") << ","
            << format_number(record.probability) << "\n";
    }
}

}  // namespace tpjc

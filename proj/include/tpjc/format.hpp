#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tpjc/optimizer.hpp"

namespace tpjc {

/// %.12g rendering; NaN prints as "nan". Used everywhere a float reaches an
/// output file so runs are byte-stable.
std::string format_number(double value);

/// CSV with an optional leading "# config ..." comment, a header
/// "t1,t2[,t3],fidelity,probability" and one row per record in grid order.
void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const std::vector<std::string>& axis_names, const std::string& config_comment);

}  // namespace tpjc

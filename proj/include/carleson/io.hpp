#pragma once

// Line-oriented text formats. Measures: header `# atomic-measure v1`, then
// `position_turns mass` per line. Closed sets: header `# closed-set v1`, then
// `gap left length` and `residual left length` lines. Blank lines and further
// `#` comments are ignored; "-" as a path means stdin/stdout.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "carleson/circle.hpp"

namespace carleson {

void write_measure(std::ostream& out, const AtomicMeasure& mu);
AtomicMeasure read_measure(std::istream& in);

void write_closed_set(std::ostream& out, const ClosedSet& E);
ClosedSet read_closed_set(std::istream& in);

// `t,lambda` rows with an optional header row.
std::pair<std::vector<double>, std::vector<double>> read_lambda_csv(std::istream& in);

AtomicMeasure load_measure(const std::string& path);
ClosedSet load_closed_set(const std::string& path);
std::pair<std::vector<double>, std::vector<double>> load_lambda_csv(const std::string& path);

}  // namespace carleson

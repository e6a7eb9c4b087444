#pragma once

#include <string>
#include <vector>

#include "evade/harness/episode.hpp"
#include "evade/learner/train.hpp"

namespace evade {

// All CSV output: comma separation, header row, floats printed with nine
// significant digits.
std::string format_number(double v);

void write_trajectory_csv(const std::string& path, const EpisodeRecord& record);
void write_curve_csv(const std::string& path,
                     const std::vector<EpisodeCurvePoint>& curve);

}  // namespace evade

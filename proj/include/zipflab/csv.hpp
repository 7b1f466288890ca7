#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zipflab/analytics.hpp"
#include "zipflab/birth.hpp"
#include "zipflab/gbm.hpp"
#include "zipflab/simulate.hpp"

namespace zipflab::io {

// Shortest round-trip decimal representation; "." decimal separator.
std::string format_double(double x);

// All writers use comma separators, a header row and LF line endings.
void write_sizes_csv(const std::string& path, const std::vector<double>& sizes);
void write_flows_csv(const std::string& path, const std::vector<FlowPoint>& flows);
void write_lifespans_csv(const std::string& path, const std::vector<LifespanRecord>& records);
void write_density_csv(const std::string& path, const DensitySolution& solution);
void write_ccdf_csv(const std::string& path,
                    const std::vector<std::pair<double, double>>& points);
void write_path_csv(const std::string& path, const PathSample& sample);
void write_birth_schedule_csv(const std::string& path, const BirthSchedule& schedule);
void write_ma_events_csv(const std::string& path, const std::vector<MAEvent>& events);

// One-column sizes file; a leading "size" header is optional.
std::vector<double> read_sizes_csv(const std::string& path);

}  // namespace zipflab::io

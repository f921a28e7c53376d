#ifndef ASCAL_OUTPUT_HPP
#define ASCAL_OUTPUT_HPP

#include "ascal/admissibility.hpp"
#include "ascal/config.hpp"
#include "ascal/dynamics.hpp"

#include <string>
#include <vector>

namespace ascal {

// 17 significant digits: doubles round-trip exactly
std::string format_double(double v);

// Writes via a temp file + rename so concurrent sweep runs never expose a
// partially written file.
void atomic_write(const std::string& path, const std::string& content);

std::vector<std::string> trajectory_csv_header(const SimulationSetup& setup,
                                               const TrajectoryRecord& rec);
std::string trajectory_csv(const SimulationSetup& setup, const TrajectoryRecord& rec);

// Full JSON summary: termination, verdicts, aggregates, and the resolved
// config (reproducibility closure).
std::string trajectory_json(const RunConfig& cfg, const SimulationSetup& setup,
                            const TrajectoryRecord& rec);

std::string scan_csv(const ScanResult& scan);

// Minimal self-contained SVG line plot of one series against t.
std::string svg_line_plot(const std::string& title, const std::vector<double>& t,
                          const std::vector<double>& y);

// One plot file per numeric CSV column, named <stem>.<column>.svg.
void write_plots(const std::string& csv_stem, const SimulationSetup& setup,
                 const TrajectoryRecord& rec);

}  // namespace ascal

#endif

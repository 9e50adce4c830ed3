#pragma once

#include <string>
#include <vector>

#include "seqtest/assumptions.hpp"
#include "seqtest/equilibrium.hpp"

namespace seqtest {

// All numeric output uses 17 significant digits so files are byte-identical
// across reruns of the same seeded computation.
std::string format_full(double x);

void write_boundaries_csv(const std::string& path, const BoundaryPair& bounds);
void write_cdfs_csv(const std::string& path, const StoppedMeasurePair& mu);
void write_value_slice_csv(const std::string& path, const ValueSurface& surface, int time_index);
void write_surface_csv(const std::string& path, const ValueSurface& surface);

void write_result_json(const std::string& path, const ProblemConfig& cfg,
                       const EquilibriumResult& result);

// Minimal CSV reader for round-trip tests and the CLI cross checks: parses a
// headered numeric CSV into columns.
std::vector<std::vector<double>> read_csv_columns(const std::string& path,
                                                  std::vector<std::string>* header = nullptr);

} // namespace seqtest

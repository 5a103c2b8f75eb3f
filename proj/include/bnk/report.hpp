#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "bnk/baseline.hpp"
#include "bnk/topology.hpp"

namespace bnk {

// Machine-readable reports. Keys are emitted in sorted order, numbers with
// shortest round-trip formatting, so identical inputs give identical bytes;
// timing can be dropped for byte-level comparison across runs.
nlohmann::json report_json(const RunReport& report, const BottleneckRunConfig& cfg,
                           bool include_timing = true);
nlohmann::json direct_report_json(const DirectSolveReport& report, bool include_timing = true);
nlohmann::json locus_json(const NormalLocusResult& locus);

void write_cloud_csv(const SampleCloud& cloud, const std::string& path,
                     const std::vector<int>* labels = nullptr);
SampleCloud read_cloud_csv(const std::string& path);

struct PlotFiles {
  std::vector<std::string> written;
  std::string notice;  // set when there was nothing to draw
};

// Writes <prefix>_points.csv and <prefix>_segments.csv; adds <prefix>.svg for
// 2D data. Above three ambient dimensions the data is first sent through a
// seeded random orthogonal projection to R^3.
PlotFiles emit_plot(const std::vector<BottleneckPair>& pairs, const SampleCloud* cloud,
                    const std::string& prefix, std::uint64_t seed);

}  // namespace bnk

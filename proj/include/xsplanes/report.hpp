// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xsplanes/experiment.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace xsplanes {

/// "0x" followed by lowercase hex digits, no padding.
std::string format_hex(Word64 v);

/// Accepts an optional 0x/0X prefix. Throws std::invalid_argument on anything
/// that is not 1..16 hex digits.
Word64 parse_hex(std::string_view text);

/// 17 significant digits ("%.17g").
std::string format_real(double v);

nlohmann::ordered_json census_json(const CaseCensus& census);

/// Field order is fixed; the same report always serializes to the same bytes.
nlohmann::ordered_json report_json(const HitReport& report);

/// Header "# magnify=<2^k> params=<a,b,c> seed=<hex>", then x_mag,y,z rows.
std::string point_cloud_csv(const std::vector<Point3>& magnified, const HitReport& report);

/// Strips of x_mag,y,z rows separated by single blank lines.
std::string mesh_csv(const Mesh& mesh, const HitReport& report);

/// gnuplot script drawing the point cloud over the eight meshes.
std::string overlay_script(const std::string& cloud_file, const std::vector<std::string>& mesh_files);

/// Writes to a sibling temporary file and renames it over `path`.
/// Throws std::runtime_error on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// points.csv, plane_*.csv (8), overlay.gp and report.json under
/// config.output_dir. Returns the paths written.
std::vector<std::filesystem::path> write_experiment_files(const ExperimentConfig& config,
                                                          const ExperimentResult& result);

} // namespace xsplanes

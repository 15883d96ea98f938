// SPDX-License-Identifier: Apache-2.0
#include "xsplanes/report.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace xsplanes {

std::string format_hex(Word64 v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
    return buf;
}

Word64 parse_hex(std::string_view text) {
    std::string_view digits = text;
    if (digits.size() >= 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
        digits.remove_prefix(2);
    }
    if (digits.empty() || digits.size() > 16) {
        throw std::invalid_argument("expected 1 to 16 hex digits: '" + std::string(text) + "'");
    }
    Word64 v = 0;
    for (char ch : digits) {
        int d = 0;
        if (ch >= '0' && ch <= '9') {
            d = ch - '0';
        } else if (ch >= 'a' && ch <= 'f') {
            d = ch - 'a' + 10;
        } else if (ch >= 'A' && ch <= 'F') {
            d = ch - 'A' + 10;
        } else {
            throw std::invalid_argument("not a hex number: '" + std::string(text) + "'");
        }
        v = (v << 4) | static_cast<Word64>(d);
    }
    return v;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json census_json(const CaseCensus& c) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["n_steps"] = c.n_steps;
    j["n_bits"] = c.n_bits;
    ordered_json rows = ordered_json::array();
    ordered_json cols = ordered_json::array();
    for (CaseKind k : kAllCases) {
        rows.push_back(std::string(outer_name(k)));
        cols.push_back(std::string(inner_name(k)));
    }
    j["rows"] = rows;
    j["columns"] = cols;
    ordered_json grid = ordered_json::array();
    for (CaseKind o : kAllCases) {
        ordered_json row = ordered_json::array();
        for (CaseKind i : kAllCases) {
            row.push_back(c.cell_frequency(o, i));
        }
        grid.push_back(row);
    }
    j["grid"] = grid;
    const auto freqs = [&c](const std::array<std::uint64_t, 3>& counts) {
        ordered_json a = ordered_json::array();
        for (auto v : counts) {
            a.push_back(c.freq(v));
        }
        return a;
    };
    j["outer"] = freqs(c.outer);
    j["inner"] = freqs(c.inner);
    j["outer_single"] = freqs(c.outer_single);
    j["inner_single"] = freqs(c.inner_single);
    j["compound_frequency"] = c.compound_frequency();
    j["cell_sum"] = c.cell_sum();
    j["carry_leak_frequency"] = c.carry_leak_frequency();
    j["analytic_estimate"] = compound_probability(c.n_bits).value;
    return j;
}

nlohmann::ordered_json report_json(const HitReport& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["params"] = ordered_json{{"a", r.params.a}, {"b", r.params.b}, {"c", r.params.c}};
    j["seed"] = format_hex(r.seed);
    j["epsilon"] = r.epsilon;
    j["magnify"] = r.magnify;
    j["x_max"] = r.x_max;
    j["n_triples_scanned"] = r.n_triples_scanned;
    j["n_in_slab"] = r.n_in_slab;
    j["truncated"] = r.truncated;
    j["hit_fraction"] = r.slab.hit_fraction;
    ordered_json labels = ordered_json::array();
    ordered_json hits = ordered_json::array();
    for (std::size_t i = 0; i < r.planes.planes.size(); ++i) {
        labels.push_back(plane_label(r.planes.planes[i]));
        hits.push_back(r.slab.per_plane_hits[i]);
    }
    j["planes"] = labels;
    j["per_plane_hits"] = hits;
    j["control_points"] = r.control.n_points;
    j["control_hit_fraction"] = r.control.hit_fraction;
    j["analytic_baseline"] = analytic_baseline(r.epsilon);
    j["concentration_ratio"] = r.concentration_ratio;
    ordered_json cases = census_json(r.census);
    cases["independent"] = census_json(r.census_independent);
    j["case_frequencies"] = cases;
    j["carry_leak_frequency"] = r.census.carry_leak_frequency();
    return j;
}

std::string point_cloud_csv(const std::vector<Point3>& magnified, const HitReport& r) {
    std::string out = "# magnify=" + format_real(r.magnify) + " params=" + std::to_string(r.params.a) +
                      "," + std::to_string(r.params.b) + "," + std::to_string(r.params.c) +
                      " seed=" + format_hex(r.seed) + "\n";
    for (const auto& p : magnified) {
        out += format_real(p.x) + "," + format_real(p.y) + "," + format_real(p.z) + "\n";
    }
    return out;
}

std::string mesh_csv(const Mesh& m, const HitReport& r) {
    std::string out = "# plane=" + plane_label(m.plane) + " magnify=" + format_real(r.magnify) +
                      " x_max=" + format_real(r.x_max) + "\n";
    bool first = true;
    for (const auto& strip : m.strips) {
        if (!first) {
            out += "\n";
        }
        first = false;
        for (const auto& p : strip.vertices) {
            out += format_real(p.x) + "," + format_real(p.y) + "," + format_real(p.z) + "\n";
        }
    }
    return out;
}

std::string overlay_script(const std::string& cloud_file, const std::vector<std::string>& mesh_files) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set xrange [0:1]\nset yrange [0:1]\nset zrange [0:1]\n"
       << "set xlabel 'magnified x'\nset ylabel 'y'\nset zlabel 'z'\n"
       << "splot '" << cloud_file << "' with points pt 7 ps 0.3 title 'outputs'";
    for (const auto& f : mesh_files) {
        os << ", \\\n      '" << f << "' with lines notitle";
    }
    os << "\n";
    return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open " + tmp.string() + ": " + std::strerror(errno));
        }
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) {
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                                 ec.message());
    }
}

std::vector<std::filesystem::path> write_experiment_files(const ExperimentConfig& config,
                                                          const ExperimentResult& result) {
    const auto& dir = config.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    }
    const HitReport& r = result.report;
    std::vector<std::filesystem::path> written;

    const std::string cloud = "points.csv";
    write_file_atomic(dir / cloud, point_cloud_csv(result.points, r));
    written.push_back(dir / cloud);

    std::vector<std::string> mesh_files;
    for (const auto& plane : r.planes.planes) {
        const std::string name = plane_file_stem(plane) + ".csv";
        write_file_atomic(dir / name, mesh_csv(mesh(plane, r.x_max, r.magnify, config.grid), r));
        written.push_back(dir / name);
        mesh_files.push_back(name);
    }

    write_file_atomic(dir / "overlay.gp", overlay_script(cloud, mesh_files));
    written.push_back(dir / "overlay.gp");

    write_file_atomic(dir / "report.json", report_json(r).dump(2) + "\n");
    written.push_back(dir / "report.json");
    return written;
}

} // namespace xsplanes

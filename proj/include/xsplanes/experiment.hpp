// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xsplanes/control.hpp"
#include "xsplanes/engine.hpp"
#include "xsplanes/planes.hpp"
#include "xsplanes/xorapprox.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace xsplanes {

inline constexpr std::uint64_t kDefaultScanCap = std::uint64_t{1} << 32;
inline constexpr double kDefaultEpsilon = 0x1.0p-10;

/// The slab x < 2^-exponent, shown magnified along x by 2^exponent.
struct SlabSpec {
    int exponent = 23;
    std::size_t target_points = 1000;
    std::uint64_t scan_cap = kDefaultScanCap;
    /// Test the slab condition on the raw output word before converting
    /// anything to floating point.
    bool fast_forward = true;

    double x_max() const { return std::ldexp(1.0, -exponent); }
    double magnify() const { return std::ldexp(1.0, exponent); }

    /// Throws std::invalid_argument unless 1 <= exponent <= 53 and
    /// target_points >= 1.
    void validate() const;
};

struct SlabSample {
    /// (magnify x, y, z) for every accepted triple, in stream order.
    std::vector<Point3> points;
    std::uint64_t triples_scanned = 0;
    /// Scan cap reached before target_points.
    bool truncated = false;
};

/// Slides a window over consecutive outputs of `source` and keeps the triples
/// whose first coordinate lies in the slab.
template <class Source>
SlabSample slab_scan(Source& shared_source, const SlabSpec& spec) {
    spec.validate();
    // Local copy keeps the generator state in registers across the scan.
    Source source = shared_source;
    SlabSample out;
    out.points.reserve(spec.target_points);
    const double magnify = spec.magnify();
    const double x_max = spec.x_max();
    // to_unit(o) < 2^-k  <=>  o < 2^(64-k)
    const Word64 limit = Word64{1} << (64 - spec.exponent);
    Word64 o0 = source();
    Word64 o1 = source();
    Word64 o2 = source();
    while (out.points.size() < spec.target_points) {
        if (out.triples_scanned == spec.scan_cap) {
            out.truncated = true;
            break;
        }
        if (spec.fast_forward) {
            // Integer test only; skip ahead to the next word inside the slab.
            std::uint64_t left = spec.scan_cap - out.triples_scanned;
            while (o0 >= limit && left > 0) {
                o0 = o1;
                o1 = o2;
                o2 = source();
                --left;
            }
            out.triples_scanned = spec.scan_cap - left;
            if (left == 0) {
                continue;
            }
            out.points.push_back(Point3{magnify * to_unit(o0), to_unit(o1), to_unit(o2)});
        } else {
            const Point3 p{to_unit(o0), to_unit(o1), to_unit(o2)};
            if (p.x < x_max) {
                out.points.push_back(Point3{magnify * p.x, p.y, p.z});
            }
        }
        ++out.triples_scanned;
        o0 = o1;
        o1 = o2;
        o2 = source();
    }
    shared_source = source;
    return out;
}

/// Slab scan of the xorshift128+ stream starting at `state`.
SlabSample slab_sample(const GenState& state, const SlabSpec& spec);

/// Slab scan of the control stream; same acceptance rule.
SlabSample control_slab_sample(Word64 control_seed, const SlabSpec& spec);

struct HitStats {
    std::size_t n_points = 0;
    std::size_t hits = 0;
    double hit_fraction = 0.0;
    /// Hits attributed to the nearest plane, in family order; sums to `hits`.
    std::array<std::size_t, 8> per_plane_hits{};
};

/// Fraction of magnified slab points within `epsilon` of the family, measured
/// on the restored coordinates (x / magnify, y, z).
/// Throws std::invalid_argument on an empty point list.
HitStats hit_stats(const std::vector<Point3>& magnified, const PlaneFamily& fam, double epsilon,
                   const SlabSpec& spec);

/// Same statistic on unmagnified points.
HitStats hit_stats_unit(const std::vector<Point3>& points, const PlaneFamily& fam, double epsilon);

/// Hit statistic for `n_points` points uniform on [0,1)^3 drawn from the
/// Philox control generator seeded with `control_seed`.
HitStats control_baseline(std::size_t n_points, const PlaneFamily& fam, double epsilon,
                          Word64 control_seed);

/// Measure of the union of eight slabs of height 2 epsilon, ignoring overlap.
constexpr double analytic_baseline(double epsilon) { return 16.0 * epsilon; }

/// Standard deviation of a binomial fraction.
inline double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

/// Tallies of the two case families along a stream of steps.
/// Rows (outer) are +, -, t-; columns (inner) are 1+2^a, 1-2^a, 2^a-1.
struct CaseCensus {
    std::uint64_t n_steps = 0;
    int n_bits = 3;
    /// Both outer and inner cases hold at steps i and i+1.
    std::array<std::array<std::uint64_t, 3>, 3> cells{};
    /// Outer case k holds at both i and i+1.
    std::array<std::uint64_t, 3> outer{};
    /// Inner case k holds at both i and i+1.
    std::array<std::uint64_t, 3> inner{};
    /// Outer case k holds at step i alone.
    std::array<std::uint64_t, 3> outer_single{};
    /// Inner case k holds at step i alone.
    std::array<std::uint64_t, 3> inner_single{};
    /// At least one cell holds.
    std::uint64_t compound = 0;
    /// Labelled operand pairs and how many of them still disagree with the
    /// arithmetic stand-in on the top bits.
    std::uint64_t labelled = 0;
    std::uint64_t leaks = 0;

    double freq(std::uint64_t count) const {
        return n_steps == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(n_steps);
    }
    double cell_frequency(CaseKind outer_case, CaseKind inner_case) const {
        return freq(cells[static_cast<std::size_t>(outer_case)][static_cast<std::size_t>(inner_case)]);
    }
    double compound_frequency() const { return freq(compound); }
    /// Expected number of satisfied cells per step.
    double cell_sum() const;
    double carry_leak_frequency() const {
        return labelled == 0 ? 0.0 : static_cast<double>(leaks) / static_cast<double>(labelled);
    }
};

/// Classifies, for each step from `state`, the exact operands of the output
/// sum: inner on (s_i, 2^a s_i) and (s_{i+1}, 2^a s_{i+1}); outer on
/// (s_{i+1}, s_i (I + L^a)) and (s_{i+2}, s_{i+1} (I + L^a)).
CaseCensus case_census(const GenState& state, std::uint64_t n_steps, int n_bits);

/// The same tallies when all eight operand words of every step are
/// independent uniform draws from the control generator.
CaseCensus case_census_independent(Word64 control_seed, std::uint64_t n_steps, int n_bits, int a);

struct ExperimentConfig {
    Params params{};
    Word64 seed = 1;
    double epsilon = kDefaultEpsilon;
    SlabSpec slab{};
    std::size_t control_points = std::size_t{1} << 20;
    Word64 control_seed = 0x5eed;
    std::uint64_t census_steps = 1'000'000;
    int census_bits = 3;
    MeshGrid grid{};
    /// Empty: compute only, write nothing.
    std::filesystem::path output_dir;
};

struct HitReport {
    Params params{};
    Word64 seed = 0;
    double epsilon = 0.0;
    double magnify = 0.0;
    double x_max = 0.0;
    std::uint64_t n_triples_scanned = 0;
    std::size_t n_in_slab = 0;
    bool truncated = false;
    HitStats slab{};
    PlaneFamily planes{};
    HitStats control{};
    double concentration_ratio = 0.0;
    CaseCensus census{};
    CaseCensus census_independent{};
};

struct ExperimentResult {
    HitReport report;
    std::vector<Point3> points;
    std::vector<std::filesystem::path> files;
};

/// Slab sampling, plane hits, control baseline and case census, plus the
/// point cloud, eight plane meshes, an overlay script and report.json under
/// output_dir when set. Throws std::runtime_error on I/O failure.
ExperimentResult run_experiment(const ExperimentConfig& config);

} // namespace xsplanes

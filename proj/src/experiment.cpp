// SPDX-License-Identifier: Apache-2.0
#include "xsplanes/experiment.hpp"
#include "xsplanes/report.hpp"

#include <stdexcept>

namespace xsplanes {

namespace {

// Philox stream ids, so the baseline and the independent census never share
// control draws.
constexpr std::uint64_t kBaselineStream = 0;
constexpr std::uint64_t kCensusStream = 1;
constexpr std::uint64_t kSlabStream = 2;

struct StepLabels {
    CaseLabel inner_i, inner_next, outer_i, outer_next;
};

void tally(CaseCensus& c, const StepLabels& l) {
    ++c.n_steps;
    std::array<bool, 3> outer_holds{};
    std::array<bool, 3> inner_holds{};
    for (CaseKind k : kAllCases) {
        const auto i = static_cast<std::size_t>(k);
        outer_holds[i] = l.outer_i.has(k) && l.outer_next.has(k);
        inner_holds[i] = l.inner_i.has(k) && l.inner_next.has(k);
        c.outer[i] += outer_holds[i];
        c.inner[i] += inner_holds[i];
        c.outer_single[i] += l.outer_i.has(k);
        c.inner_single[i] += l.inner_i.has(k);
    }
    bool any = false;
    for (std::size_t o = 0; o < 3; ++o) {
        for (std::size_t i = 0; i < 3; ++i) {
            if (outer_holds[o] && inner_holds[i]) {
                ++c.cells[o][i];
                any = true;
            }
        }
    }
    c.compound += any;
}

// Counts labelled operand pairs at step i and carry leaks among them.
void tally_leaks(CaseCensus& c, const CaseLabel& label, Word64 x, Word64 y, int n,
                 Word64 (*approx)(Word64, Word64, CaseKind)) {
    for (CaseKind k : kAllCases) {
        if (label.has(k)) {
            ++c.labelled;
            c.leaks += carry_leaks(x ^ y, approx(x, y, k), n);
        }
    }
}

Word64 scaled_approx(Word64 s, Word64 scaled, CaseKind k) {
    // inner_approx with 2^a s already computed.
    switch (k) {
    case CaseKind::sum: return s + scaled;
    case CaseKind::diff: return s - scaled;
    case CaseKind::rdiff: return scaled - s;
    }
    return 0;
}

} // namespace

void SlabSpec::validate() const {
    if (exponent < 1 || exponent > 53) {
        throw std::invalid_argument("slab exponent out of range [1,53]: " + std::to_string(exponent));
    }
    if (target_points < 1) {
        throw std::invalid_argument("slab target_points must be positive");
    }
}

SlabSample slab_sample(const GenState& state, const SlabSpec& spec) {
    Xorshift128Plus gen(state);
    return slab_scan(gen, spec);
}

SlabSample control_slab_sample(Word64 control_seed, const SlabSpec& spec) {
    Philox4x32 gen(control_seed, kSlabStream);
    return slab_scan(gen, spec);
}

HitStats hit_stats_unit(const std::vector<Point3>& points, const PlaneFamily& fam, double epsilon) {
    if (points.empty()) {
        throw std::invalid_argument("hit statistics need at least one point");
    }
    HitStats s;
    s.n_points = points.size();
    for (const auto& p : points) {
        const Nearest near = min_dist(p, fam);
        if (near.dist <= epsilon) {
            ++s.hits;
            ++s.per_plane_hits[near.index];
        }
    }
    s.hit_fraction = static_cast<double>(s.hits) / static_cast<double>(s.n_points);
    return s;
}

HitStats hit_stats(const std::vector<Point3>& magnified, const PlaneFamily& fam, double epsilon,
                   const SlabSpec& spec) {
    std::vector<Point3> restored;
    restored.reserve(magnified.size());
    const double magnify = spec.magnify();
    for (const auto& p : magnified) {
        restored.push_back(Point3{p.x / magnify, p.y, p.z});
    }
    return hit_stats_unit(restored, fam, epsilon);
}

HitStats control_baseline(std::size_t n_points, const PlaneFamily& fam, double epsilon,
                          Word64 control_seed) {
    Philox4x32 gen(control_seed, kBaselineStream);
    std::vector<Point3> points;
    points.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double x = gen.uniform();
        const double y = gen.uniform();
        const double z = gen.uniform();
        points.push_back(Point3{x, y, z});
    }
    return hit_stats_unit(points, fam, epsilon);
}

double CaseCensus::cell_sum() const {
    std::uint64_t total = 0;
    for (const auto& row : cells) {
        for (auto v : row) {
            total += v;
        }
    }
    return freq(total);
}

CaseCensus case_census(const GenState& state, std::uint64_t n_steps, int n_bits) {
    state.validate();
    if (n_steps < 1) {
        throw std::invalid_argument("case census needs at least one step");
    }
    const int a = state.params.a;
    CaseCensus c;
    c.n_bits = n_bits;
    Word64 s0 = state.s0;
    Word64 s1 = state.s1;
    for (std::uint64_t i = 0; i < n_steps; ++i) {
        const Word64 s2 = step_state(s0, s1, state.params).second;
        const Word64 t0 = xorshift_xform(s0, a, ShiftDir::left);
        const Word64 t1 = xorshift_xform(s1, a, ShiftDir::left);
        const StepLabels l{classify_inner(s0, a, n_bits), classify_inner(s1, a, n_bits),
                           classify_outer(s1, t0, n_bits), classify_outer(s2, t1, n_bits)};
        tally(c, l);
        tally_leaks(c, l.inner_i, s0, shl(s0, a), n_bits, scaled_approx);
        tally_leaks(c, l.outer_i, s1, t0, n_bits, outer_approx);
        s0 = s1;
        s1 = s2;
    }
    return c;
}

CaseCensus case_census_independent(Word64 control_seed, std::uint64_t n_steps, int n_bits, int a) {
    if (n_steps < 1) {
        throw std::invalid_argument("case census needs at least one step");
    }
    check_shift(a);
    Philox4x32 gen(control_seed, kCensusStream);
    CaseCensus c;
    c.n_bits = n_bits;
    for (std::uint64_t i = 0; i < n_steps; ++i) {
        std::array<Word64, 8> w{};
        for (auto& v : w) {
            v = gen();
        }
        const auto label = [n_bits](Word64 x, Word64 y) {
            return classify(top_bits(x, n_bits), top_bits(y, n_bits), n_bits);
        };
        const StepLabels l{label(w[0], w[1]), label(w[2], w[3]), label(w[4], w[5]), label(w[6], w[7])};
        tally(c, l);
        tally_leaks(c, l.inner_i, w[0], w[1], n_bits, outer_approx);
        tally_leaks(c, l.outer_i, w[4], w[5], n_bits, outer_approx);
    }
    return c;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const GenState state = seed(config.seed, config.params);
    const PlaneFamily fam = family(config.params.a);

    ExperimentResult result;
    HitReport& r = result.report;
    r.params = config.params;
    r.seed = config.seed;
    r.epsilon = config.epsilon;
    r.magnify = config.slab.magnify();
    r.x_max = config.slab.x_max();
    r.planes = fam;

    SlabSample sample = slab_sample(state, config.slab);
    r.n_triples_scanned = sample.triples_scanned;
    r.n_in_slab = sample.points.size();
    r.truncated = sample.truncated;
    if (!sample.points.empty()) {
        r.slab = hit_stats(sample.points, fam, config.epsilon, config.slab);
    }

    r.control = control_baseline(config.control_points, fam, config.epsilon, config.control_seed);
    r.concentration_ratio = r.control.hit_fraction > 0.0
                                ? r.slab.hit_fraction / r.control.hit_fraction
                                : std::numeric_limits<double>::infinity();

    r.census = case_census(state, config.census_steps, config.census_bits);
    r.census_independent = case_census_independent(config.control_seed, config.census_steps,
                                                    config.census_bits, config.params.a);

    result.points = std::move(sample.points);
    if (!config.output_dir.empty()) {
        result.files = write_experiment_files(config, result);
    }
    return result;
}

} // namespace xsplanes

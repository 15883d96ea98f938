// SPDX-License-Identifier: Apache-2.0
#include "xsplanes/cli.hpp"

#include "xsplanes/engine.hpp"
#include "xsplanes/experiment.hpp"
#include "xsplanes/report.hpp"
#include "xsplanes/xorapprox.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace xsplanes {

namespace {

constexpr std::uint64_t kCliScanCap = std::uint64_t{1} << 36;

// Raised for bad flag values found after parsing; maps to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string seed = "0x1";
    std::string state;
    int a = 23;
    int b = 17;
    int c = 26;

    // gen
    std::size_t count = 10;
    std::string format = "hex";

    // verify
    int n_max = 10;

    // planes / census
    int n_bits = 3;
    double epsilon = kDefaultEpsilon;
    std::size_t target = 0;
    std::uint64_t scan_cap = kCliScanCap;
    std::string output_dir = "planes_out";
    bool full_scale = false;
    int magnify_exp = 0;
    bool control_only = false;
    double threshold = 10.0;
    std::size_t control_points = std::size_t{1} << 20;
    std::string control_seed = "0x5eed";
    std::uint64_t census_steps = 1'000'000;
    bool no_fast_forward = false;
    std::size_t grid_columns = 32;
    std::size_t grid_rows = 129;
};

void add_generator_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed, "64-bit seed in hex")->capture_default_str();
    cmd->add_option("-a,--shift-a", o.a, "left shift a")->capture_default_str();
    cmd->add_option("-b,--shift-b", o.b, "right shift b")->capture_default_str();
    cmd->add_option("-c,--shift-c", o.c, "right shift c")->capture_default_str();
}

Params params_of(const Options& o, std::ostream& err) {
    Params p{o.a, o.b, o.c};
    try {
        p.validate();
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
    for (const auto& w : p.warnings()) {
        err << "warning: " << w << "\n";
    }
    return p;
}

Word64 hex_flag(const std::string& text, const char* name) {
    try {
        return parse_hex(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    }
}

GenState initial_state(const Options& o, const Params& p) {
    if (o.state.empty()) {
        return seed(hex_flag(o.seed, "--seed"), p);
    }
    const auto comma = o.state.find(',');
    if (comma == std::string::npos) {
        throw UsageError("--state expects two hex words 's0,s1'");
    }
    GenState st{hex_flag(o.state.substr(0, comma), "--state"),
                hex_flag(o.state.substr(comma + 1), "--state"), p};
    if (st.s0 == 0 && st.s1 == 0) {
        throw UsageError("--state must not be all zero");
    }
    return st;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
    const Params p = params_of(o, err);
    Xorshift128Plus gen(initial_state(o, p));
    char buf[32];
    for (std::size_t i = 0; i < o.count; ++i) {
        const Word64 v = gen();
        if (o.format == "unit") {
            out << format_real(to_unit(v)) << "\n";
        } else {
            std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
            out << buf << "\n";
        }
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    if (o.n_max < 1 || o.n_max > kMaxExhaustiveWidth) {
        throw UsageError("--n-max must be in [1," + std::to_string(kMaxExhaustiveWidth) + "]");
    }
    bool ok = true;
    char line[256];
    std::snprintf(line, sizeof line, "%3s %10s %8s %8s %8s %8s %6s %9s %9s %9s %s\n", "n", "pairs",
                  "#A", "#B", "#C", "#AnB", "#AnBnC", "union", "expected", "eq(+,-)", "status");
    out << line;
    for (int n = 1; n <= o.n_max; ++n) {
        const CaseCounts c = count_cases(n);
        const TheoremCheck sum = verify_xor_sum(n);
        const TheoremCheck diff = verify_xor_diff(n);
        std::uint64_t p3 = 1;
        std::uint64_t p2 = 1;
        for (int i = 0; i < n; ++i) {
            p3 *= 3;
            p2 *= 2;
        }
        const std::uint64_t expected_union = 3 * p3 - 3 * p2 + 1;
        const bool row_ok = c.total == p2 * p2 && c.cA == p3 && c.cB == p3 && c.cC == p3 &&
                            c.cAB == p2 && c.cBC == p2 && c.cCA == p2 && c.cABC == 1 &&
                            c.cUnion == expected_union && c.inclusion_exclusion_holds() &&
                            sum.holds && diff.holds && sum.equality_pairs == p3 &&
                            diff.equality_pairs == p3;
        ok = ok && row_ok;
        char eq[32];
        std::snprintf(eq, sizeof eq, "%llu/%llu", static_cast<unsigned long long>(sum.equality_pairs),
                      static_cast<unsigned long long>(diff.equality_pairs));
        char un[32];
        std::snprintf(un, sizeof un, "%llu/%llu", static_cast<unsigned long long>(c.cUnion),
                      static_cast<unsigned long long>(c.total));
        std::snprintf(line, sizeof line, "%3d %10llu %8llu %8llu %8llu %8llu %6llu %9s %9llu %9s %s\n",
                      n, static_cast<unsigned long long>(c.total),
                      static_cast<unsigned long long>(c.cA), static_cast<unsigned long long>(c.cB),
                      static_cast<unsigned long long>(c.cC), static_cast<unsigned long long>(c.cAB),
                      static_cast<unsigned long long>(c.cABC), un,
                      static_cast<unsigned long long>(expected_union), eq, row_ok ? "ok" : "MISMATCH");
        out << line;
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_planes(const Options& o, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    cfg.params = params_of(o, err);
    cfg.seed = hex_flag(o.seed, "--seed");
    cfg.control_seed = hex_flag(o.control_seed, "--control-seed");
    if (!(o.epsilon >= 0.0 && o.epsilon <= 0.5)) {
        throw UsageError("--epsilon must be in [0, 0.5]");
    }
    cfg.epsilon = o.epsilon;
    cfg.control_points = o.control_points;
    if (cfg.control_points < 1) {
        throw UsageError("--control-points must be positive");
    }

    const PlaneFamily fam = family(cfg.params.a);
    if (o.control_only) {
        const HitStats ctl = control_baseline(cfg.control_points, fam, cfg.epsilon, cfg.control_seed);
        const double expected = analytic_baseline(cfg.epsilon);
        nlohmann::ordered_json j;
        j["epsilon"] = cfg.epsilon;
        j["control_seed"] = format_hex(cfg.control_seed);
        j["control_points"] = ctl.n_points;
        j["control_hit_fraction"] = ctl.hit_fraction;
        j["analytic_baseline"] = expected;
        j["binomial_sigma"] = binomial_sigma(expected, static_cast<double>(ctl.n_points));
        out << j.dump(2) << "\n";
        return kExitOk;
    }

    cfg.slab.exponent = o.magnify_exp > 0 ? o.magnify_exp : cfg.params.a;
    cfg.slab.target_points = o.target > 0 ? o.target : (o.full_scale ? 10000 : 1000);
    cfg.slab.scan_cap = o.scan_cap;
    cfg.slab.fast_forward = !o.no_fast_forward;
    try {
        cfg.slab.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    cfg.census_steps = o.census_steps;
    cfg.census_bits = o.n_bits;
    cfg.grid = MeshGrid{o.grid_columns, o.grid_rows};
    cfg.output_dir = o.output_dir;

    ExperimentResult res;
    try {
        res = run_experiment(cfg);
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const HitReport& r = res.report;
    out << report_json(r).dump(2) << "\n";
    err << "slab points " << r.n_in_slab << " from " << r.n_triples_scanned << " triples"
        << (r.truncated ? " (truncated at scan cap)" : "") << "; hit fraction "
        << format_real(r.slab.hit_fraction) << ", control " << format_real(r.control.hit_fraction)
        << ", concentration_ratio " << format_real(r.concentration_ratio) << "\n";
    return r.concentration_ratio >= o.threshold ? kExitOk : kExitCheckFailed;
}

int cmd_census(const Options& o, std::ostream& out, std::ostream& err) {
    const Params p = params_of(o, err);
    if (o.n_bits < 1 || o.n_bits > kMaxWidth) {
        throw UsageError("--n must be in [1," + std::to_string(kMaxWidth) + "]");
    }
    if (o.census_steps < 1) {
        throw UsageError("--steps must be positive");
    }
    const GenState st = initial_state(o, p);
    nlohmann::ordered_json j;
    j["params"] = nlohmann::ordered_json{{"a", p.a}, {"b", p.b}, {"c", p.c}};
    j["seed"] = format_hex(hex_flag(o.seed, "--seed"));
    j["generator"] = census_json(case_census(st, o.census_steps, o.n_bits));
    j["independent"] = census_json(case_census_independent(hex_flag(o.control_seed, "--control-seed"),
                                                           o.census_steps, o.n_bits, p.a));
    out << j.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"xorshift128+ generator, xor/arithmetic case checks and plane concentration tests"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen", "print generator outputs");
    add_generator_flags(gen, o);
    gen->add_option("--state", o.state, "explicit state 's0,s1' in hex (overrides --seed)");
    gen->add_option("--count", o.count, "number of outputs")->capture_default_str();
    gen->add_option("--format", o.format, "hex or unit")
        ->check(CLI::IsMember({"hex", "unit"}))
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "exhaustive xor/sum/difference case counts");
    verify->add_option("--n-max", o.n_max, "largest bit width checked")->capture_default_str();

    auto* planes = app.add_subcommand("planes", "slab point cloud, plane meshes and hit report");
    add_generator_flags(planes, o);
    planes->add_option("--epsilon", o.epsilon, "plane hit tolerance")->capture_default_str();
    planes->add_option("--target", o.target, "slab points to collect (default 1000, 10000 with --full-scale)");
    planes->add_option("--scan-cap", o.scan_cap, "maximum triples scanned")->capture_default_str();
    planes->add_option("--output-dir", o.output_dir, "directory for CSV/JSON files")->capture_default_str();
    planes->add_flag("--full-scale", o.full_scale, "collect 10000 slab points");
    planes->add_option("--magnify-exp", o.magnify_exp, "slab x < 2^-k magnified by 2^k (default k=a)");
    planes->add_flag("--control-only", o.control_only, "only report the control baseline");
    planes->add_option("--threshold", o.threshold, "minimum concentration ratio for exit 0")
        ->capture_default_str();
    planes->add_option("--control-points", o.control_points, "control sample size")->capture_default_str();
    planes->add_option("--control-seed", o.control_seed, "control generator seed in hex")
        ->capture_default_str();
    planes->add_option("--census-steps", o.census_steps, "steps for the case census")->capture_default_str();
    planes->add_option("--n", o.n_bits, "top bits inspected by the case census")->capture_default_str();
    planes->add_flag("--no-fast-forward", o.no_fast_forward, "convert every triple before the slab test");
    planes->add_option("--grid-columns", o.grid_columns, "mesh columns along x")->capture_default_str();
    planes->add_option("--grid-rows", o.grid_rows, "mesh rows along y")->capture_default_str();

    auto* census = app.add_subcommand("census", "frequencies of the outer/inner case grid");
    add_generator_flags(census, o);
    census->add_option("--state", o.state, "explicit state 's0,s1' in hex (overrides --seed)");
    census->add_option("--steps", o.census_steps, "number of steps")->capture_default_str();
    census->add_option("--n", o.n_bits, "top bits inspected")->capture_default_str();
    census->add_option("--control-seed", o.control_seed, "seed for the independent-words census")
        ->capture_default_str();

    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
            err << sub->help();
        } else {
            err << app.help();
        }
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(o, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(o, out);
        }
        if (planes->parsed()) {
            return cmd_planes(o, out, err);
        }
        return cmd_census(o, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace xsplanes

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fg/codes.hpp"
#include "fg/forcedgap.hpp"
#include "fg/harness.hpp"
#include "fg/oracle.hpp"
#include "fg/problem.hpp"
#include "fg/svgplot.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FG_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

std::vector<double> parse_thresholds(const std::string& spec) {
    std::vector<double> out;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok == "inf") {
            out.push_back(std::numeric_limits<double>::infinity());
        } else {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("malformed threshold '" + tok + "'");
            out.push_back(v);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty threshold list");
    return out;
}

fg::RelayConfig load_relay_config(const std::string& path, fg::RelayConfig fallback) {
    if (path.empty()) return fallback;
    return fg::RelayConfig::from_kv(read_file(path));
}

int cmd_build(const std::string& preset, const std::string& dem_path, double p,
              const std::string& out_path) {
    fg::DecodingProblem prob = dem_path.empty() ? fg::preset_problem(preset, p)
                                                : fg::parse_dem(read_file(dem_path));
    write_file(out_path, fg::serialize_dem(prob));
    return 0;
}

int cmd_run(const std::string& dem_path, std::size_t shots, std::uint64_t seed,
            std::size_t rounds, const std::string& baseline_cfg_path,
            const std::string& forced_cfg_path, std::size_t workers,
            const std::string& out_path) {
    fg::DecodingProblem prob = fg::parse_dem(read_file(dem_path));
    fg::ExperimentConfig cfg;
    cfg.baseline = load_relay_config(baseline_cfg_path, fg::RelayConfig::baseline_defaults());
    cfg.forced = load_relay_config(forced_cfg_path, fg::RelayConfig::forced_defaults());
    cfg.n_shots = shots;
    cfg.rounds = rounds;
    cfg.master_seed = seed;
    cfg.worker_count = workers;
    auto records = fg::run_experiment(prob, cfg);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    fg::write_records_csv(out, records);
    return 0;
}

int cmd_sweep(const std::string& records_path, const std::string& thresholds_spec,
              std::size_t rounds, const std::string& out_path, const std::string& svg_path) {
    std::ifstream in(records_path);
    if (!in) throw std::runtime_error("cannot open '" + records_path + "'");
    auto records = fg::read_records_csv(in);
    auto thresholds = parse_thresholds(thresholds_spec);
    auto curve = fg::sweep_thresholds(records, thresholds, rounds);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    fg::write_curve_csv(out, curve);
    std::string json_path = out_path + ".json";
    write_file(json_path, fg::curve_to_json(curve));
    if (!svg_path.empty()) write_file(svg_path, fg::curve_to_svg(curve));
    return 0;
}

int cmd_oracle(const std::string& dem_path, const std::string& syndrome_bits,
               std::size_t exhaustive_shots, bool check_reduction, std::uint64_t seed) {
    fg::DecodingProblem prob = fg::parse_dem(read_file(dem_path));

    auto report = [&](const fg::Syndrome& s) {
        auto dist = fg::class_distribution(prob, s);
        if (dist.log_masses.empty()) throw std::runtime_error("infeasible syndrome");
        std::cout << "syndrome " << s.to_string() << "\n";
        for (std::size_t i = 0; i < dist.log_masses.size(); ++i)
            std::cout << "  class " << dist.log_masses[i].first.to_string() << "  P = "
                      << dist.mass(i) << "\n";
        auto [best, logp] = fg::mld_decode(prob, s);
        std::cout << "  lambda* = " << best.to_string() << "  logP = " << logp << "\n";
        if (dist.log_masses.size() >= 2) {
            double g = fg::exact_gap(prob, s);
            std::cout << "  ExactGap = " << g << "\n";
            if (check_reduction) {
                double gf = fg::exact_gap_via_forced(prob, s);
                std::cout << "  ExactGap (forced reduction) = " << gf
                          << "  difference = " << std::abs(g - gf) << "\n";
            }
        } else {
            std::cout << "  single logical class in coset; gap undefined\n";
        }
    };

    if (!syndrome_bits.empty()) {
        fg::Syndrome s = fg::BitVec::from_string(syndrome_bits);
        if (s.size() != prob.num_detectors()) throw std::runtime_error("syndrome length mismatch");
        report(s);
    } else {
        fg::Rng rng(fg::hash_seed(seed, 0xacce55));
        for (std::size_t i = 0; i < exhaustive_shots; ++i) {
            auto [f, s, cls] = fg::sample_shot(prob, rng);
            report(s);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forced-gap post-selection toolkit"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "write a decoding problem as a DEM file");
    std::string preset, build_dem, build_out;
    double build_p = 0.001;
    build->add_option("preset", preset, "code preset: rep3, rep5, bb72, bb144");
    build->add_option("--dem", build_dem, "re-serialize an existing DEM file instead");
    build->add_option("--p", build_p, "uniform prior probability");
    build->add_option("--out", build_out, "output DEM path")->required();

    // run
    auto* run = app.add_subcommand("run", "run Monte Carlo shots with forced-gap decoding");
    std::string run_dem, run_out, run_bcfg, run_fcfg;
    std::size_t run_shots = 1000, run_rounds = 1, run_workers = 1;
    std::uint64_t run_seed = default_seed();
    run->add_option("--dem", run_dem, "decoding problem DEM file")->required();
    run->add_option("--shots", run_shots, "number of shots");
    run->add_option("--seed", run_seed, "master seed (default: FG_SEED env or 0)");
    run->add_option("--rounds", run_rounds, "syndrome-extraction rounds (metadata)");
    run->add_option("--baseline-config", run_bcfg, "baseline relay config (key=value)");
    run->add_option("--forced-config", run_fcfg, "forced-run relay config (key=value)");
    run->add_option("--workers", run_workers, "worker thread count");
    run->add_option("--out", run_out, "output records CSV")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "threshold sweep over a records file");
    std::string sw_records, sw_thresholds = "0", sw_out, sw_svg;
    std::size_t sw_rounds = 1;
    sweep->add_option("--records", sw_records, "records CSV from `run`")->required();
    sweep->add_option("--thresholds", sw_thresholds, "comma list, e.g. 0,0.5,1,2,inf");
    sweep->add_option("--rounds", sw_rounds, "rounds for per-round normalization");
    sweep->add_option("--out", sw_out, "output curve CSV (JSON written alongside)")->required();
    sweep->add_option("--svg", sw_svg, "optional SVG plot path");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact MLD / Exact Gap on small problems");
    std::string or_dem, or_syndrome;
    std::size_t or_shots = 0;
    std::uint64_t or_seed = default_seed();
    bool or_check = false;
    oracle->add_option("--dem", or_dem, "decoding problem DEM file")->required();
    oracle->add_option("--syndrome", or_syndrome, "syndrome bits, e.g. 10");
    oracle->add_option("--exhaustive-shots", or_shots, "sample and report this many shots");
    oracle->add_option("--seed", or_seed, "sampling seed");
    oracle->add_flag("--check-reduction", or_check, "also compute the forced reduction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (build->parsed()) {
            if (preset.empty() && build_dem.empty()) {
                std::cerr << "build: give a preset or --dem\n";
                return kExitUsage;
            }
            if (!preset.empty() && !fg::is_known_preset(preset)) {
                std::cerr << "build: unknown preset '" << preset << "'\n";
                return kExitUsage;
            }
            return cmd_build(preset, build_dem, build_p, build_out);
        }
        if (run->parsed())
            return cmd_run(run_dem, run_shots, run_seed, run_rounds, run_bcfg, run_fcfg,
                           run_workers, run_out);
        if (sweep->parsed()) {
            std::vector<double> parsed;
            try {
                parsed = parse_thresholds(sw_thresholds);
            } catch (const std::exception& e) {
                std::cerr << "sweep: " << e.what() << "\n";
                return kExitUsage;
            }
            return cmd_sweep(sw_records, sw_thresholds, sw_rounds, sw_out, sw_svg);
        }
        if (oracle->parsed()) {
            if (or_syndrome.empty() && or_shots == 0) {
                std::cerr << "oracle: give --syndrome or --exhaustive-shots\n";
                return kExitUsage;
            }
            return cmd_oracle(or_dem, or_syndrome, or_shots, or_check, or_seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}

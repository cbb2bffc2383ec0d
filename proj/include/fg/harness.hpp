#ifndef FG_HARNESS_HPP
#define FG_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fg/forcedgap.hpp"
#include "fg/problem.hpp"
#include "fg/relay.hpp"
#include "fg/rng.hpp"

namespace fg {

struct ShotRecord {
    std::size_t shot_index = 0;
    std::uint64_t shot_seed = 0;
    LogicalClass true_class;                  // A * f
    GapValue gap = 0.0;
    bool erasure = false;
    std::optional<LogicalClass> decoded_class;  // absent on erasure
    bool success = false;                       // decoded_class == true_class
    std::size_t forced_converged = 0;
};

struct CurvePoint {
    double threshold = 0.0;
    double ps_rate = 0.0;   // fraction of shots rejected
    double ler = 0.0;       // failures among accepted shots
    double ler_per_round = 0.0;
    double ci_low = 0.0, ci_high = 0.0;  // 95% Wilson interval on ler
    std::size_t n_accepted = 0;
};

struct ExperimentConfig {
    RelayConfig baseline = RelayConfig::baseline_defaults();
    RelayConfig forced = RelayConfig::forced_defaults();
    std::size_t n_shots = 1;
    std::size_t rounds = 1;
    std::uint64_t master_seed = 0;
    std::size_t worker_count = 1;
};

std::tuple<BitVec, Syndrome, LogicalClass> sample_shot(const DecodingProblem& prob, Rng& rng);

// Deterministic for fixed master_seed, independent of worker_count.
std::vector<ShotRecord> run_experiment(const DecodingProblem& prob, const ExperimentConfig& cfg);

std::vector<CurvePoint> sweep_thresholds(const std::vector<ShotRecord>& records,
                                         const std::vector<double>& thresholds,
                                         std::size_t rounds);

double per_round_ler(double p_total, std::size_t rounds);

std::pair<double, double> wilson_ci(std::size_t failures, std::size_t n,
                                    double confidence = 0.95);

// CSV: shot,seed,gap,erasure,success,forced_converged,true_class,decoded_class
void write_records_csv(std::ostream& out, const std::vector<ShotRecord>& records);
std::vector<ShotRecord> read_records_csv(std::istream& in);

// CSV: T,ps_rate,ler,ler_per_round,ci_low,ci_high,n_accepted
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points);
std::string curve_to_json(const std::vector<CurvePoint>& points);

}  // namespace fg

#endif

#ifndef FG_FORCEDGAP_HPP
#define FG_FORCEDGAP_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fg/problem.hpp"
#include "fg/relay.hpp"

namespace fg {

// value >= 0 or +infinity; exact 0 between distinct classes is meaningful
using GapValue = double;

struct GapOutcome {
    GapValue gap = 0.0;
    std::optional<LogicalClass> lambda0;        // pooled most-likely class
    std::optional<LogicalClass> lambda1;        // runner-up, absent => gap = inf
    std::optional<BitVec> best_correction;      // best correction within lambda0
    std::optional<LogicalClass> baseline_class; // L^(0)
    bool erasure = false;                       // baseline run unconverged
    std::size_t forced_converged_count = 0;
    // distinct classes with their best log-likelihoods, decreasing
    std::vector<std::pair<LogicalClass, double>> class_table;
};

struct Decision {
    bool accepted;
    double threshold;
};

// Best log-likelihood per distinct class, sorted decreasing (lex tie-break).
std::vector<std::pair<LogicalClass, double>> pool_classes(
    const std::vector<CandidateSolution>& candidates);

// Baseline run, K forced runs, pooled gap and conventions. Decoder seeds are
// derived from shot_seed: baseline uses stream 0, forced run i uses stream i+1.
GapOutcome run_forced_gap(const DecodingProblem& prob, const Syndrome& syndrome,
                          const RelayConfig& cfg_baseline, const RelayConfig& cfg_forced,
                          std::uint64_t shot_seed);

Decision decide(GapValue gap, double threshold);

LogicalClass decoded_class(const GapOutcome& outcome);

}  // namespace fg

#endif

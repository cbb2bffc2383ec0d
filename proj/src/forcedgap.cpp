#include "fg/forcedgap.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "fg/rng.hpp"

namespace fg {

std::vector<std::pair<LogicalClass, double>> pool_classes(
    const std::vector<CandidateSolution>& candidates) {
    auto lex_cmp = [](const BitVec& x, const BitVec& y) { return x.lex_less(y); };
    std::map<LogicalClass, double, decltype(lex_cmp)> best(lex_cmp);
    for (const auto& c : candidates) {
        auto [it, fresh] = best.try_emplace(c.logical_class, c.log_likelihood);
        if (!fresh && c.log_likelihood > it->second) it->second = c.log_likelihood;
    }
    std::vector<std::pair<LogicalClass, double>> table(best.begin(), best.end());
    std::sort(table.begin(), table.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first.lex_less(y.first);
    });
    return table;
}

GapOutcome run_forced_gap(const DecodingProblem& prob, const Syndrome& syndrome,
                          const RelayConfig& cfg_baseline, const RelayConfig& cfg_forced,
                          std::uint64_t shot_seed) {
    GapOutcome out;

    RelayConfig base_cfg = cfg_baseline;
    base_cfg.seed = hash_seed(shot_seed, 0);
    DecodeOutcome baseline = relay_decode(prob.H, prob.A, prob.priors, syndrome, base_cfg);
    if (!baseline.converged) {
        out.erasure = true;
        out.gap = 0.0;
        return out;
    }
    out.baseline_class = baseline.candidates.front().logical_class;

    std::vector<CandidateSolution> pooled = baseline.candidates;
    std::size_t K = prob.num_observables();
    for (std::size_t i = 0; i < K; ++i) {
        ForcedInstance fi = build_forced(prob, i, *out.baseline_class);
        Syndrome ext = extend_syndrome(syndrome, fi.forced_bit);
        RelayConfig fcfg = cfg_forced;
        fcfg.seed = hash_seed(shot_seed, i + 1);
        DecodeOutcome forced = relay_decode(fi.h_aug, prob.A, prob.priors, ext, fcfg);
        if (forced.converged) ++out.forced_converged_count;
        for (auto& c : forced.candidates) pooled.push_back(std::move(c));
    }

    out.class_table = pool_classes(pooled);
    out.lambda0 = out.class_table.front().first;
    if (out.class_table.size() >= 2) {
        out.lambda1 = out.class_table[1].first;
        out.gap = out.class_table[0].second - out.class_table[1].second;
    } else {
        out.gap = std::numeric_limits<double>::infinity();
    }

    double best_ll = -std::numeric_limits<double>::infinity();
    for (const auto& c : pooled) {
        if (c.logical_class == *out.lambda0 && c.log_likelihood > best_ll) {
            best_ll = c.log_likelihood;
            out.best_correction = c.correction;
        }
    }
    return out;
}

Decision decide(GapValue gap, double threshold) {
    if (threshold < 0.0) throw std::invalid_argument("decide: negative threshold");
    return {gap >= threshold, threshold};
}

LogicalClass decoded_class(const GapOutcome& outcome) {
    if (outcome.erasure) throw std::invalid_argument("decoded_class: erasure outcome");
    return *outcome.lambda0;
}

}  // namespace fg

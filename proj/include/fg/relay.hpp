#ifndef FG_RELAY_HPP
#define FG_RELAY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fg/problem.hpp"

namespace fg {

struct RelayConfig {
    double gamma0 = 0.1;      // uniform memory strength, first leg
    double gamma_min = -0.24;
    double gamma_max = 0.66;
    std::size_t pre_iter = 80;       // max iterations, first leg
    std::size_t set_max_iter = 60;   // max iterations per subsequent leg
    std::size_t num_sets = 1201;     // R: max legs
    std::size_t stop_nconv = 100;    // S: converged legs before stopping
    std::uint64_t seed = 0;

    static RelayConfig baseline_defaults() { return {}; }
    static RelayConfig forced_defaults() {
        RelayConfig c;
        c.num_sets = 25;
        return c;
    }

    void validate() const;
    std::string to_kv() const;
    static RelayConfig from_kv(const std::string& text);
};

struct CandidateSolution {
    BitVec correction;       // length N, satisfies H*e = sigma
    double log_likelihood;
    LogicalClass logical_class;
    std::size_t leg_index;
};

struct DecodeOutcome {
    std::vector<CandidateSolution> candidates;  // descending log-likelihood
    bool converged = false;                     // <=> candidates nonempty
    std::size_t legs_run = 0;
};

// Min-sum flooding BP with per-variable memory strength. One engine instance
// owns the mutable message state for one decoding instance.
class BpEngine {
public:
    BpEngine(const SparseBitMatrix& h, std::span<const double> llr_weights,
             const Syndrome& syndrome);

    // Runs one leg: returns the hard decision the first iteration it satisfies
    // H*e = sigma, else nullopt after max_iter iterations. Final posteriors are
    // retained as the next leg's starting effective priors.
    std::optional<BitVec> run_leg(std::span<const double> gammas, std::size_t max_iter);

private:
    const SparseBitMatrix& h_;
    Syndrome syndrome_;
    std::size_t num_vars_, num_checks_, num_edges_;
    std::vector<double> channel_;    // clamped LLR weights; pinned vars get BIG
    std::vector<double> prior_eff_;  // carried across legs
    std::vector<double> posterior_;
    std::vector<double> c2v_;        // check-major edge messages
    std::vector<std::uint32_t> edge_var_;    // edge -> variable
    std::vector<std::size_t> check_begin_;   // CSR over checks
    std::vector<std::vector<std::size_t>> var_edges_;
    BitVec hard_;
};

std::vector<double> sample_gammas(const RelayConfig& cfg, std::size_t leg_index,
                                  std::size_t num_vars);

DecodeOutcome relay_decode(const SparseBitMatrix& h, const SparseBitMatrix& a,
                           std::span<const double> priors, const Syndrome& syndrome,
                           const RelayConfig& cfg);

}  // namespace fg

#endif

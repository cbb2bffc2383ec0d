#include "fg/relay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <set>

#include "fg/rng.hpp"

namespace fg {

namespace {

// stands in for an infinite LLR so arithmetic with negative gamma stays finite
constexpr double kPinned = 1e30;

}  // namespace

void RelayConfig::validate() const {
    if (gamma_min > gamma_max) throw std::invalid_argument("RelayConfig: gamma_min > gamma_max");
    if (pre_iter < 1 || set_max_iter < 1) throw std::invalid_argument("RelayConfig: iteration counts must be >= 1");
    if (stop_nconv < 1) throw std::invalid_argument("RelayConfig: stop_nconv must be >= 1");
    if (num_sets < 1) throw std::invalid_argument("RelayConfig: num_sets must be >= 1");
}

std::string RelayConfig::to_kv() const {
    std::ostringstream out;
    out.precision(17);
    out << "gamma0=" << gamma0 << "\n"
        << "gamma_min=" << gamma_min << "\n"
        << "gamma_max=" << gamma_max << "\n"
        << "pre_iter=" << pre_iter << "\n"
        << "set_max_iter=" << set_max_iter << "\n"
        << "num_sets=" << num_sets << "\n"
        << "stop_nconv=" << stop_nconv << "\n"
        << "seed=" << seed << "\n";
    return out.str();
}

RelayConfig RelayConfig::from_kv(const std::string& text) {
    RelayConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(first, eq - first);
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string val = line.substr(eq + 1);
        try {
            if (key == "gamma0") cfg.gamma0 = std::stod(val);
            else if (key == "gamma_min") cfg.gamma_min = std::stod(val);
            else if (key == "gamma_max") cfg.gamma_max = std::stod(val);
            else if (key == "pre_iter") cfg.pre_iter = std::stoull(val);
            else if (key == "set_max_iter") cfg.set_max_iter = std::stoull(val);
            else if (key == "num_sets") cfg.num_sets = std::stoull(val);
            else if (key == "stop_nconv") cfg.stop_nconv = std::stoull(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

BpEngine::BpEngine(const SparseBitMatrix& h, std::span<const double> llr_weights,
                   const Syndrome& syndrome)
    : h_(h), syndrome_(syndrome), num_vars_(h.cols()), num_checks_(h.rows()),
      hard_(h.cols()) {
    if (llr_weights.size() != num_vars_) throw std::invalid_argument("BpEngine: weight length mismatch");
    if (syndrome.size() != num_checks_) throw std::invalid_argument("BpEngine: syndrome length mismatch");
    channel_.assign(llr_weights.begin(), llr_weights.end());
    for (auto& w : channel_) if (!std::isfinite(w) || w > kPinned) w = kPinned;

    check_begin_.resize(num_checks_ + 1, 0);
    for (std::size_t c = 0; c < num_checks_; ++c)
        check_begin_[c + 1] = check_begin_[c] + h.row(c).size();
    num_edges_ = check_begin_[num_checks_];
    edge_var_.reserve(num_edges_);
    var_edges_.resize(num_vars_);
    for (std::size_t c = 0; c < num_checks_; ++c) {
        for (auto v : h.row(c)) {
            var_edges_[v].push_back(edge_var_.size());
            edge_var_.push_back(v);
        }
    }
    c2v_.assign(num_edges_, 0.0);
    prior_eff_ = channel_;
    posterior_ = channel_;
}

std::optional<BitVec> BpEngine::run_leg(std::span<const double> gammas, std::size_t max_iter) {
    if (gammas.size() != num_vars_) throw std::invalid_argument("run_leg: gamma length mismatch");
    std::fill(c2v_.begin(), c2v_.end(), 0.0);
    std::vector<double> total(num_vars_);
    std::vector<double> v2c(num_edges_);

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // variable to check, excluding the receiving edge
        for (std::size_t j = 0; j < num_vars_; ++j) {
            double t = prior_eff_[j];
            for (auto e : var_edges_[j]) t += c2v_[e];
            total[j] = t;
        }
        for (std::size_t e = 0; e < num_edges_; ++e)
            v2c[e] = total[edge_var_[e]] - c2v_[e];

        // check to variable: min-sum with the syndrome folded into the sign
        for (std::size_t c = 0; c < num_checks_; ++c) {
            std::size_t b = check_begin_[c], eend = check_begin_[c + 1];
            double min1 = std::numeric_limits<double>::infinity();
            double min2 = std::numeric_limits<double>::infinity();
            std::size_t argmin = b;
            unsigned sign = syndrome_.get(c) ? 1u : 0u;
            for (std::size_t e = b; e < eend; ++e) {
                double mag = std::fabs(v2c[e]);
                if (v2c[e] < 0.0) sign ^= 1u;
                if (mag < min1) { min2 = min1; min1 = mag; argmin = e; }
                else if (mag < min2) { min2 = mag; }
            }
            for (std::size_t e = b; e < eend; ++e) {
                double mag = e == argmin ? min2 : min1;
                // degree-1 checks leave min2 infinite; keep arithmetic finite
                if (mag > kPinned) mag = kPinned;
                unsigned s = sign ^ (v2c[e] < 0.0 ? 1u : 0u);
                c2v_[e] = s ? -mag : mag;
            }
        }

        // posterior, hard decision, convergence check
        for (std::size_t j = 0; j < num_vars_; ++j) {
            double t = prior_eff_[j];
            for (auto e : var_edges_[j]) t += c2v_[e];
            posterior_[j] = t;
            hard_.set(j, t < 0.0);
        }
        if (mat_vec_mul(h_, hard_) == syndrome_) {
            prior_eff_ = posterior_;  // relay handoff
            return hard_;
        }

        // memory update: mix channel prior with this iteration's posterior
        for (std::size_t j = 0; j < num_vars_; ++j)
            prior_eff_[j] = (1.0 - gammas[j]) * channel_[j] + gammas[j] * posterior_[j];
    }
    prior_eff_ = posterior_;  // relay handoff
    return std::nullopt;
}

std::vector<double> sample_gammas(const RelayConfig& cfg, std::size_t leg_index,
                                  std::size_t num_vars) {
    if (leg_index == 0) return std::vector<double>(num_vars, cfg.gamma0);
    Rng rng(hash_seed(cfg.seed, leg_index));
    std::vector<double> g(num_vars);
    for (auto& x : g) x = rng.next_uniform(cfg.gamma_min, cfg.gamma_max);
    return g;
}

DecodeOutcome relay_decode(const SparseBitMatrix& h, const SparseBitMatrix& a,
                           std::span<const double> priors, const Syndrome& syndrome,
                           const RelayConfig& cfg) {
    cfg.validate();
    if (a.cols() != h.cols()) throw std::invalid_argument("relay_decode: H/A column mismatch");
    if (priors.size() != h.cols()) throw std::invalid_argument("relay_decode: prior length mismatch");
    if (syndrome.size() != h.rows()) throw std::invalid_argument("relay_decode: syndrome length mismatch");

    std::vector<double> weights(priors.size());
    for (std::size_t j = 0; j < priors.size(); ++j) {
        double p = priors[j];
        if (!(p >= 0.0 && p < 0.5)) throw std::invalid_argument("relay_decode: prior outside [0, 1/2)");
        weights[j] = p == 0.0 ? std::numeric_limits<double>::infinity()
                              : std::log((1.0 - p) / p);
    }

    auto candidate_log_likelihood = [&](const BitVec& e) {
        double acc = 0.0;
        for (std::size_t j = 0; j < e.size(); ++j)
            acc += e.get(j) ? std::log(priors[j]) : std::log1p(-priors[j]);
        return acc;
    };

    BpEngine engine(h, weights, syndrome);
    DecodeOutcome out;
    auto lex_cmp = [](const BitVec& x, const BitVec& y) { return x.lex_less(y); };
    std::set<BitVec, decltype(lex_cmp)> seen(lex_cmp);
    std::size_t conv = 0;
    for (std::size_t leg = 0; leg < cfg.num_sets && conv < cfg.stop_nconv; ++leg) {
        out.legs_run = leg + 1;
        auto gammas = sample_gammas(cfg, leg, h.cols());
        auto sol = engine.run_leg(gammas, leg == 0 ? cfg.pre_iter : cfg.set_max_iter);
        if (!sol) continue;
        ++conv;
        if (seen.insert(*sol).second) {
            CandidateSolution c;
            c.log_likelihood = candidate_log_likelihood(*sol);
            c.logical_class = mat_vec_mul(a, *sol);
            c.leg_index = leg;
            c.correction = std::move(*sol);
            out.candidates.push_back(std::move(c));
        }
    }
    std::sort(out.candidates.begin(), out.candidates.end(),
              [](const CandidateSolution& x, const CandidateSolution& y) {
                  if (x.log_likelihood != y.log_likelihood)
                      return x.log_likelihood > y.log_likelihood;
                  if (x.correction != y.correction)
                      return x.correction.lex_less(y.correction);
                  return x.leg_index < y.leg_index;
              });
    out.converged = !out.candidates.empty();
    return out;
}

}  // namespace fg

#include "fg/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace fg {

namespace {

// fault-sampling substream, kept clear of the decoder streams 0..K
constexpr std::uint64_t kFaultStream = 0x6661756c74ULL;

BitVec bitvec_from_hex(const std::string& hex) {
    BitVec v(hex.size() * 4);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        char ch = hex[hex.size() - 1 - d];
        unsigned val;
        if (ch >= '0' && ch <= '9') val = ch - '0';
        else if (ch >= 'a' && ch <= 'f') val = 10 + ch - 'a';
        else throw std::invalid_argument("bad hex digit in class field");
        for (unsigned b = 0; b < 4; ++b)
            if (val & (1u << b)) v.set(4 * d + b, true);
    }
    return v;
}

}  // namespace

std::tuple<BitVec, Syndrome, LogicalClass> sample_shot(const DecodingProblem& prob, Rng& rng) {
    BitVec f(prob.num_faults());
    for (std::size_t j = 0; j < prob.num_faults(); ++j)
        if (rng.next_bernoulli(prob.priors[j])) f.set(j, true);
    Syndrome s = mat_vec_mul(prob.H, f);
    LogicalClass cls = mat_vec_mul(prob.A, f);
    return {std::move(f), std::move(s), std::move(cls)};
}

std::vector<ShotRecord> run_experiment(const DecodingProblem& prob, const ExperimentConfig& cfg) {
    if (cfg.n_shots < 1) throw std::invalid_argument("run_experiment: n_shots must be >= 1");
    if (cfg.rounds < 1) throw std::invalid_argument("run_experiment: rounds must be >= 1");
    cfg.baseline.validate();
    cfg.forced.validate();

    std::vector<ShotRecord> records(cfg.n_shots);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> audit_failed{false};

    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cfg.n_shots || audit_failed.load()) break;
            std::uint64_t shot_seed = hash_seed(cfg.master_seed, i);
            Rng fault_rng(hash_seed(shot_seed, kFaultStream));
            auto [f, syndrome, true_class] = sample_shot(prob, fault_rng);
            GapOutcome g = run_forced_gap(prob, syndrome, cfg.baseline, cfg.forced, shot_seed);

            ShotRecord& r = records[i];
            r.shot_index = i;
            r.shot_seed = shot_seed;
            r.true_class = true_class;
            r.gap = g.gap;
            r.erasure = g.erasure;
            r.forced_converged = g.forced_converged_count;
            if (!g.erasure) {
                // validity audit on the reported correction
                if (mat_vec_mul(prob.H, *g.best_correction) != syndrome) {
                    audit_failed.store(true);
                    break;
                }
                r.decoded_class = decoded_class(g);
                r.success = *r.decoded_class == true_class;
            }
        }
    };

    std::size_t workers = std::max<std::size_t>(1, cfg.worker_count);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (audit_failed.load())
        throw std::runtime_error("run_experiment: decode validity audit failed");
    return records;
}

std::vector<CurvePoint> sweep_thresholds(const std::vector<ShotRecord>& records,
                                         const std::vector<double>& thresholds,
                                         std::size_t rounds) {
    if (records.empty()) throw std::invalid_argument("sweep_thresholds: empty record list");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (thresholds[i] < 0.0) throw std::invalid_argument("sweep_thresholds: negative threshold");
        if (i > 0 && thresholds[i] < thresholds[i - 1])
            throw std::invalid_argument("sweep_thresholds: thresholds not ascending");
    }
    std::vector<CurvePoint> out;
    out.reserve(thresholds.size());
    for (double t : thresholds) {
        CurvePoint pt;
        pt.threshold = t;
        std::size_t rejected = 0, failures = 0;
        for (const auto& r : records) {
            if (!decide(r.gap, t).accepted) {
                ++rejected;
                continue;
            }
            ++pt.n_accepted;
            if (!r.success) ++failures;  // erasures accepted only at T = 0, counted as errors
        }
        pt.ps_rate = static_cast<double>(rejected) / records.size();
        if (pt.n_accepted > 0) {
            pt.ler = static_cast<double>(failures) / pt.n_accepted;
            std::tie(pt.ci_low, pt.ci_high) = wilson_ci(failures, pt.n_accepted);
        }
        pt.ler_per_round = per_round_ler(pt.ler, rounds);
        out.push_back(pt);
    }
    return out;
}

double per_round_ler(double p_total, std::size_t rounds) {
    if (!(p_total >= 0.0 && p_total <= 1.0)) throw std::invalid_argument("per_round_ler: p outside [0,1]");
    if (rounds < 1) throw std::invalid_argument("per_round_ler: rounds must be >= 1");
    return 1.0 - std::pow(1.0 - p_total, 1.0 / static_cast<double>(rounds));
}

namespace {

// Acklam's rational approximation to the standard normal quantile.
double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        double q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

std::pair<double, double> wilson_ci(std::size_t failures, std::size_t n, double confidence) {
    if (n == 0) throw std::invalid_argument("wilson_ci: n must be >= 1");
    if (failures > n) throw std::invalid_argument("wilson_ci: failures > n");
    double z = normal_quantile(0.5 + confidence / 2.0);
    double phat = static_cast<double>(failures) / n;
    double z2n = z * z / n;
    double denom = 1.0 + z2n;
    double center = phat + z2n / 2.0;
    double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n));
    double low = std::max(0.0, (center - spread) / denom);
    double high = std::min(1.0, (center + spread) / denom);
    return {low, high};
}

void write_records_csv(std::ostream& out, const std::vector<ShotRecord>& records) {
    out << "shot,seed,gap,erasure,success,forced_converged,true_class,decoded_class\n";
    char buf[64];
    for (const auto& r : records) {
        if (std::isinf(r.gap)) std::snprintf(buf, sizeof buf, "inf");
        else std::snprintf(buf, sizeof buf, "%.17g", r.gap);
        out << r.shot_index << ',' << r.shot_seed << ',' << buf << ','
            << (r.erasure ? 1 : 0) << ',' << (r.success ? 1 : 0) << ','
            << r.forced_converged << ',' << r.true_class.to_hex() << ',';
        if (r.decoded_class) out << r.decoded_class->to_hex();
        out << '\n';
    }
}

std::vector<ShotRecord> read_records_csv(std::istream& in) {
    std::vector<ShotRecord> records;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("records CSV: empty file");
    if (line.rfind("shot,seed,gap", 0) != 0)
        throw std::invalid_argument("records CSV: unexpected header");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            auto comma = line.find(',', pos);
            fields.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (fields.size() != 8)
            throw std::invalid_argument("records CSV line " + std::to_string(lineno) + ": expected 8 fields");
        ShotRecord r;
        r.shot_index = std::stoull(fields[0]);
        r.shot_seed = std::stoull(fields[1]);
        r.gap = fields[2] == "inf" ? std::numeric_limits<double>::infinity() : std::stod(fields[2]);
        r.erasure = fields[3] == "1";
        r.success = fields[4] == "1";
        r.forced_converged = std::stoull(fields[5]);
        r.true_class = bitvec_from_hex(fields[6]);
        if (!fields[7].empty()) r.decoded_class = bitvec_from_hex(fields[7]);
        records.push_back(std::move(r));
    }
    return records;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
    out << "T,ps_rate,ler,ler_per_round,ci_low,ci_high,n_accepted\n";
    char buf[256];
    for (const auto& p : points) {
        if (std::isinf(p.threshold))
            std::snprintf(buf, sizeof buf, "inf,%.17g,%.17g,%.17g,%.17g,%.17g,%zu",
                          p.ps_rate, p.ler, p.ler_per_round, p.ci_low, p.ci_high, p.n_accepted);
        else
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu",
                          p.threshold, p.ps_rate, p.ler, p.ler_per_round, p.ci_low,
                          p.ci_high, p.n_accepted);
        out << buf << '\n';
    }
}

std::string curve_to_json(const std::vector<CurvePoint>& points) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json pt;
        if (std::isinf(p.threshold)) pt["T"] = "inf";
        else pt["T"] = p.threshold;
        pt["ps_rate"] = p.ps_rate;
        pt["ler"] = p.ler;
        pt["ler_per_round"] = p.ler_per_round;
        pt["ci_low"] = p.ci_low;
        pt["ci_high"] = p.ci_high;
        pt["n_accepted"] = p.n_accepted;
        doc.push_back(std::move(pt));
    }
    return doc.dump(2);
}

}  // namespace fg

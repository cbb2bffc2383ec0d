#include "fg/problem.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace fg {

DecodingProblem DecodingProblem::make(SparseBitMatrix H, SparseBitMatrix A,
                                      std::vector<double> priors) {
    if (H.cols() != A.cols()) throw std::invalid_argument("DecodingProblem: H/A column mismatch");
    if (priors.size() != H.cols()) throw std::invalid_argument("DecodingProblem: prior length mismatch");
    DecodingProblem p;
    p.llr_weights.reserve(priors.size());
    for (double q : priors) {
        if (!(q >= 0.0 && q < 0.5)) throw std::invalid_argument("DecodingProblem: prior outside [0, 1/2)");
        p.llr_weights.push_back(q == 0.0 ? std::numeric_limits<double>::infinity()
                                         : std::log((1.0 - q) / q));
    }
    p.H = std::move(H);
    p.A = std::move(A);
    p.priors = std::move(priors);
    return p;
}

double log_likelihood(const DecodingProblem& prob, const BitVec& e) {
    if (e.size() != prob.num_faults()) throw std::invalid_argument("log_likelihood: dimension mismatch");
    double acc = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) {
        double p = prob.priors[j];
        if (e.get(j)) {
            if (p == 0.0) return -std::numeric_limits<double>::infinity();
            acc += std::log(p);
        } else {
            acc += std::log1p(-p);
        }
    }
    return acc;
}

LogicalClass logical_class_of(const DecodingProblem& prob, const BitVec& e) {
    return mat_vec_mul(prob.A, e);
}

ForcedInstance build_forced(const DecodingProblem& prob, std::size_t i,
                            const LogicalClass& baseline_class) {
    if (i >= prob.num_observables()) throw std::out_of_range("build_forced: observable index out of range");
    ForcedInstance f;
    f.observable_index = i;
    f.h_aug = append_row(prob.H, prob.A.row_as_bitvec(i));
    f.forced_bit = baseline_class.get(i) ? 0 : 1;
    return f;
}

Syndrome extend_syndrome(const Syndrome& s, int forced_bit) {
    Syndrome out(s.size() + 1);
    for (std::size_t i = 0; i < s.size(); ++i) out.set(i, s.get(i));
    out.set(s.size(), forced_bit != 0);
    return out;
}

namespace {

struct Fault {
    std::vector<std::uint32_t> detectors;
    std::vector<std::uint32_t> observables;
    double p;
};

// toggles membership of id mod 2 (paired targets within one instruction cancel)
void toggle(std::vector<std::uint32_t>& v, std::uint32_t id) {
    auto it = std::find(v.begin(), v.end(), id);
    if (it != v.end()) v.erase(it); else v.push_back(id);
}

}  // namespace

DecodingProblem parse_dem(const std::string& text) {
    std::vector<Fault> faults;
    long max_det = -1, max_obs = -1;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        std::string tok;
        if (!(ls >> tok)) continue;

        auto parse_target = [&](const std::string& t, char kind) -> std::uint32_t {
            if (t.size() < 2 || t[0] != kind)
                throw DemParseError(lineno, "expected " + std::string(1, kind) + "<k>, got '" + t + "'");
            std::uint32_t k = 0;
            auto [ptr, ec] = std::from_chars(t.data() + 1, t.data() + t.size(), k);
            if (ec != std::errc{} || ptr != t.data() + t.size())
                throw DemParseError(lineno, "bad index in target '" + t + "'");
            return k;
        };

        if (tok.rfind("error(", 0) == 0) {
            if (tok.back() != ')') throw DemParseError(lineno, "malformed error(...) token");
            std::string num = tok.substr(6, tok.size() - 7);
            char* end = nullptr;
            double p = std::strtod(num.c_str(), &end);
            if (end != num.c_str() + num.size() || num.empty())
                throw DemParseError(lineno, "bad probability '" + num + "'");
            if (!(p >= 0.0 && p < 0.5))
                throw DemParseError(lineno, "probability outside [0, 1/2)");
            Fault f;
            f.p = p;
            std::string t;
            while (ls >> t) {
                if (t == "^") continue;
                if (t[0] == 'D') {
                    auto k = parse_target(t, 'D');
                    toggle(f.detectors, k);
                    max_det = std::max(max_det, static_cast<long>(k));
                } else if (t[0] == 'L') {
                    auto k = parse_target(t, 'L');
                    toggle(f.observables, k);
                    max_obs = std::max(max_obs, static_cast<long>(k));
                } else {
                    throw DemParseError(lineno, "unknown target '" + t + "'");
                }
            }
            faults.push_back(std::move(f));
        } else if (tok == "detector") {
            std::string t;
            if (!(ls >> t)) throw DemParseError(lineno, "detector declaration missing target");
            max_det = std::max(max_det, static_cast<long>(parse_target(t, 'D')));
            // trailing coordinates ignored
        } else if (tok == "logical_observable") {
            std::string t;
            if (!(ls >> t)) throw DemParseError(lineno, "logical_observable declaration missing target");
            max_obs = std::max(max_obs, static_cast<long>(parse_target(t, 'L')));
        } else if (tok == "repeat") {
            throw DemParseError(lineno, "repeat blocks are not supported");
        } else {
            throw DemParseError(lineno, "unknown instruction '" + tok + "'");
        }
    }
    if (faults.empty()) throw DemParseError(lineno, "no error instructions in file");

    std::size_t M = static_cast<std::size_t>(max_det + 1);
    std::size_t K = static_cast<std::size_t>(max_obs + 1);
    std::size_t N = faults.size();
    SparseBitMatrix H(M, N), A(K, N);
    std::vector<double> priors(N);
    for (std::size_t j = 0; j < N; ++j) {
        for (auto d : faults[j].detectors) H.add_entry(d, j);
        for (auto o : faults[j].observables) A.add_entry(o, j);
        priors[j] = faults[j].p;
    }
    return DecodingProblem::make(std::move(H), std::move(A), std::move(priors));
}

std::string serialize_dem(const DecodingProblem& prob) {
    std::ostringstream out;
    if (prob.num_detectors() > 0)
        out << "detector D" << prob.num_detectors() - 1 << "\n";
    if (prob.num_observables() > 0)
        out << "logical_observable L" << prob.num_observables() - 1 << "\n";
    auto ht = prob.H.transposed();
    auto at = prob.A.transposed();
    char buf[64];
    for (std::size_t j = 0; j < prob.num_faults(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", prob.priors[j]);
        out << "error(" << buf << ")";
        for (auto d : ht.row(j)) out << " D" << d;
        for (auto o : at.row(j)) out << " L" << o;
        out << "\n";
    }
    return out.str();
}

}  // namespace fg

#include "fg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

namespace fg {

namespace {

constexpr std::size_t kMaxKernelDim = 24;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

}  // namespace

double ClassDistribution::mass(std::size_t i) const { return std::exp(log_masses[i].second); }

double ClassDistribution::total_mass() const { return std::exp(log_syndrome_mass); }

std::vector<BitVec> enumerate_coset(const SparseBitMatrix& h, const Syndrome& syndrome) {
    auto particular = solve(h, syndrome);
    if (!particular) return {};
    auto kernel = kernel_basis(h);
    if (kernel.size() > kMaxKernelDim)
        throw BudgetExceeded("enumerate_coset: kernel dimension " + std::to_string(kernel.size()) +
                             " exceeds budget of " + std::to_string(kMaxKernelDim));
    std::vector<BitVec> out;
    out.reserve(std::size_t{1} << kernel.size());
    BitVec cur = *particular;
    out.push_back(cur);
    // Gray-code walk: one basis-vector xor per step
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << kernel.size()); ++g) {
        cur ^= kernel[std::countr_zero(g)];
        out.push_back(cur);
    }
    return out;
}

ClassDistribution class_distribution(const DecodingProblem& prob, const Syndrome& syndrome) {
    auto coset = enumerate_coset(prob.H, syndrome);
    auto lex_cmp = [](const BitVec& x, const BitVec& y) { return x.lex_less(y); };
    std::map<LogicalClass, double, decltype(lex_cmp)> acc(lex_cmp);
    double total = kNegInf;
    for (const auto& e : coset) {
        double ll = log_likelihood(prob, e);
        if (ll == kNegInf) continue;  // zero-prior fault used
        LogicalClass cls = logical_class_of(prob, e);
        auto [it, fresh] = acc.try_emplace(std::move(cls), kNegInf);
        it->second = log_add(it->second, ll);
        total = log_add(total, ll);
    }
    ClassDistribution dist;
    dist.log_syndrome_mass = total;
    dist.log_masses.assign(acc.begin(), acc.end());
    std::sort(dist.log_masses.begin(), dist.log_masses.end(),
              [](const auto& x, const auto& y) {
                  if (x.second != y.second) return x.second > y.second;
                  return x.first.lex_less(y.first);
              });
    return dist;
}

std::pair<LogicalClass, double> mld_decode(const DecodingProblem& prob, const Syndrome& syndrome) {
    auto dist = class_distribution(prob, syndrome);
    if (dist.log_masses.empty())
        throw std::invalid_argument("mld_decode: infeasible syndrome");
    return dist.log_masses.front();
}

double exact_gap(const DecodingProblem& prob, const Syndrome& syndrome) {
    auto dist = class_distribution(prob, syndrome);
    if (dist.log_masses.size() < 2)
        throw std::invalid_argument("exact_gap: fewer than two logical classes in coset");
    return dist.log_masses[0].second - dist.log_masses[1].second;
}

double exact_gap_via_forced(const DecodingProblem& prob, const Syndrome& syndrome) {
    auto [best_class, best_logp] = mld_decode(prob, syndrome);
    double second = kNegInf;
    for (std::size_t i = 0; i < prob.num_observables(); ++i) {
        ForcedInstance fi = build_forced(prob, i, best_class);
        Syndrome ext = extend_syndrome(syndrome, fi.forced_bit);
        // the augmented instance keeps A and p; only H and sigma change
        DecodingProblem aug = DecodingProblem::make(fi.h_aug, prob.A, prob.priors);
        auto dist = class_distribution(aug, ext);
        if (dist.log_masses.empty()) continue;  // forcing observable i is infeasible
        second = std::max(second, dist.log_masses.front().second);
    }
    if (second == kNegInf)
        throw std::invalid_argument("exact_gap_via_forced: fewer than two logical classes in coset");
    return best_logp - second;
}

}  // namespace fg

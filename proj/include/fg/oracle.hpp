#ifndef FG_ORACLE_HPP
#define FG_ORACLE_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "fg/problem.hpp"

namespace fg {

class BudgetExceeded : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact logical-class probabilities of one syndrome coset. Entries sorted by
// decreasing mass, ties lexicographically on class bits.
struct ClassDistribution {
    std::vector<std::pair<LogicalClass, double>> log_masses;
    double log_syndrome_mass;

    double mass(std::size_t i) const;
    double total_mass() const;
};

// All e with H*e = sigma; empty iff infeasible. Kernel dimension capped at 24.
std::vector<BitVec> enumerate_coset(const SparseBitMatrix& h, const Syndrome& syndrome);

ClassDistribution class_distribution(const DecodingProblem& prob, const Syndrome& syndrome);

// Most-likely logical class and its log-probability; throws on infeasible syndrome.
std::pair<LogicalClass, double> mld_decode(const DecodingProblem& prob, const Syndrome& syndrome);

// log P[best class] - log P[second class]; throws if fewer than two classes.
double exact_gap(const DecodingProblem& prob, const Syndrome& syndrome);

// Same value computed through the K augmented instances (H^(i), sigma^(i)).
double exact_gap_via_forced(const DecodingProblem& prob, const Syndrome& syndrome);

}  // namespace fg

#endif

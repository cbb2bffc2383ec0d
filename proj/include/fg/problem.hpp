#ifndef FG_PROBLEM_HPP
#define FG_PROBLEM_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fg/f2.hpp"

namespace fg {

using Syndrome = BitVec;      // length M
using LogicalClass = BitVec;  // length K

// Decoding problem (H, A, p) with precomputed LLR weights w_j = ln((1-p_j)/p_j).
// p_j == 0 is allowed; its weight is +infinity and the fault can never appear
// in a finite-likelihood correction.
struct DecodingProblem {
    SparseBitMatrix H;           // M x N
    SparseBitMatrix A;           // K x N
    std::vector<double> priors;  // each in [0, 1/2)
    std::vector<double> llr_weights;

    std::size_t num_faults() const { return H.cols(); }
    std::size_t num_detectors() const { return H.rows(); }
    std::size_t num_observables() const { return A.rows(); }

    static DecodingProblem make(SparseBitMatrix H, SparseBitMatrix A,
                                std::vector<double> priors);
};

struct ForcedInstance {
    std::size_t observable_index;  // i in [0, K)
    SparseBitMatrix h_aug;         // (M+1) x N: H with A's row i appended
    int forced_bit;                // 1 xor baseline_class[i]
};

double log_likelihood(const DecodingProblem& prob, const BitVec& e);
LogicalClass logical_class_of(const DecodingProblem& prob, const BitVec& e);
ForcedInstance build_forced(const DecodingProblem& prob, std::size_t i,
                            const LogicalClass& baseline_class);
Syndrome extend_syndrome(const Syndrome& s, int forced_bit);

class DemParseError : public std::runtime_error {
public:
    DemParseError(std::size_t line, const std::string& what)
        : std::runtime_error("DEM line " + std::to_string(line) + ": " + what),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Flat detector-error-model text: `error(<p>) <targets>`, `detector D<k> ...`,
// `logical_observable L<k>`, `#` comments. Targets D<k>, L<k>, `^` (ignored).
DecodingProblem parse_dem(const std::string& text);
std::string serialize_dem(const DecodingProblem& prob);

}  // namespace fg

#endif

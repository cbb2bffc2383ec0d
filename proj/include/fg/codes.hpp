#ifndef FG_CODES_HPP
#define FG_CODES_HPP

#include <string>
#include <utility>
#include <vector>

#include "fg/problem.hpp"

namespace fg {

// Polynomial in x, y with exponents taken mod (l, m) at evaluation time.
struct BivariatePoly {
    std::vector<std::pair<int, int>> terms;  // (exponent of x, exponent of y)
};

struct CssCode {
    SparseBitMatrix h_x, h_z;
    SparseBitMatrix a_x, a_z;  // logical action rows, pairing a_x * a_z^T = I
    std::size_t n = 0, k = 0;
};

enum class CssSide { X, Z };

// Code-capacity repetition code: H = adjacent parities, A = indicator of qubit 0.
DecodingProblem repetition_problem(std::size_t n, double p);

// Phenomenological repetition code: `rounds` rounds of noisy check measurement,
// open time boundary at round 0, noiseless final readout.
DecodingProblem repetition_phenom_problem(std::size_t n, std::size_t rounds,
                                          double p_data, double p_meas);

// Bivariate bicycle code: H_X = [A|B], H_Z = [B^T|A^T] with A = a(x,y),
// B = b(x,y) over commuting cyclic shifts x = C_l (x) I_m, y = I_l (x) C_m.
CssCode bb_code(std::size_t l, std::size_t m, const BivariatePoly& a, const BivariatePoly& b);

// Deterministic logical bases: kernel-complement rows adjusted so the GF(2)
// pairing matrix A_X * A_Z^T is the identity.
std::pair<SparseBitMatrix, SparseBitMatrix> css_logicals(const SparseBitMatrix& h_x,
                                                         const SparseBitMatrix& h_z);

DecodingProblem css_side_problem(const CssCode& code, CssSide side, double p);

// Named presets: "rep3", "rep5", "bb72", "bb144" (BB presets use the Z side).
DecodingProblem preset_problem(const std::string& name, double p);
bool is_known_preset(const std::string& name);

}  // namespace fg

#endif

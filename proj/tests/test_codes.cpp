#include <doctest.h>

#include "fg/codes.hpp"
#include "fg/oracle.hpp"

using namespace fg;

namespace {

BivariatePoly poly_a() { return {{{3, 0}, {0, 1}, {0, 2}}}; }
BivariatePoly poly_b() { return {{{0, 3}, {1, 0}, {2, 0}}}; }

bool orthogonal(const SparseBitMatrix& hx, const SparseBitMatrix& hz) {
    auto prod = mat_mat_mul(hx, hz.transposed());
    for (const auto& row : prod)
        if (row.any()) return false;
    return true;
}

}  // namespace

TEST_CASE("repetition_problem") {
    auto prob = repetition_problem(3, 0.1);
    CHECK(prob.H.row_as_bitvec(0) == BitVec{1, 1, 0});
    CHECK(prob.H.row_as_bitvec(1) == BitVec{0, 1, 1});
    CHECK(prob.A.row_as_bitvec(0) == BitVec{1, 0, 0});
    CHECK_THROWS(repetition_problem(4, 0.1));
    CHECK_THROWS(repetition_problem(3, 0.5));

    auto p5 = repetition_problem(5, 0.1);
    CHECK(rank(p5.H) == 4);
    auto kb = kernel_basis(p5.H);
    REQUIRE(kb.size() == 1);
    CHECK(kb[0] == BitVec{1, 1, 1, 1, 1});
}

TEST_CASE("repetition_phenom_problem structure") {
    auto prob = repetition_phenom_problem(3, 2, 0.02, 0.03);
    CHECK(prob.num_detectors() == 4);
    CHECK(prob.num_faults() == 8);  // 3*2 data + 2*1 measurement
    // data faults carry p_data, measurement faults p_meas
    for (std::size_t j = 0; j < 6; ++j) CHECK(prob.priors[j] == 0.02);
    for (std::size_t j = 6; j < 8; ++j) CHECK(prob.priors[j] == 0.03);
    // qubit-0 data faults in every round are the logical action
    CHECK(prob.A.row_as_bitvec(0) == BitVec{1, 0, 0, 1, 0, 0, 0, 0});

    // rounds=1 with no measurement noise reduces to the code-capacity problem
    auto one = repetition_phenom_problem(3, 1, 0.1, 0.0);
    auto cc = repetition_problem(3, 0.1);
    CHECK(one.H == cc.H);
    CHECK(one.A == cc.A);
}

TEST_CASE("bb_code structure: bb72 and bb144") {
    auto c72 = bb_code(6, 6, poly_a(), poly_b());
    CHECK(c72.n == 72);
    CHECK(c72.k == 12);
    CHECK(rank(c72.h_x) == 30);
    CHECK(orthogonal(c72.h_x, c72.h_z));

    auto c144 = bb_code(12, 6, poly_a(), poly_b());
    CHECK(c144.n == 144);
    CHECK(c144.k == 12);
    CHECK(orthogonal(c144.h_x, c144.h_z));
}

TEST_CASE("bb_code with trivial polynomials still CSS-orthogonal") {
    BivariatePoly one{{{0, 0}}};
    auto c = bb_code(3, 4, one, one);
    CHECK(orthogonal(c.h_x, c.h_z));
}

TEST_CASE("css_logicals pairing and membership") {
    auto code = bb_code(6, 6, poly_a(), poly_b());
    REQUIRE(code.a_x.rows() == 12);
    REQUIRE(code.a_z.rows() == 12);
    // logical rows commute with the opposite-side checks
    auto zero_x = BitVec(code.h_z.rows());
    auto zero_z = BitVec(code.h_x.rows());
    for (std::size_t r = 0; r < 12; ++r) {
        CHECK(mat_vec_mul(code.h_z, code.a_x.row_as_bitvec(r)) == zero_x);
        CHECK(mat_vec_mul(code.h_x, code.a_z.row_as_bitvec(r)) == zero_z);
    }
    // pairing matrix is the identity
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j)
            CHECK(code.a_x.row_as_bitvec(i).dot(code.a_z.row_as_bitvec(j)) == (i == j));
}

TEST_CASE("css_logicals on the repetition code as trivial CSS") {
    auto rep = repetition_problem(3, 0.1);
    auto [ax, az] = css_logicals(SparseBitMatrix(0, 3), rep.H);
    REQUIRE(ax.rows() == 1);
    REQUIRE(az.rows() == 1);
    CHECK(ax.row_as_bitvec(0) == BitVec{1, 1, 1});
    CHECK(mat_vec_mul(rep.H, ax.row_as_bitvec(0)) == BitVec(2));
    CHECK(ax.row_as_bitvec(0).dot(az.row_as_bitvec(0)));
}

TEST_CASE("css_side_problem") {
    auto code = bb_code(6, 6, poly_a(), poly_b());
    auto prob = css_side_problem(code, CssSide::Z, 0.01);
    CHECK(prob.num_faults() == 72);
    CHECK(prob.num_detectors() == 36);
    CHECK(rank(prob.H) == 30);
    CHECK(prob.num_observables() == 12);
    // class well-defined modulo X-stabilizers
    for (std::size_t r = 0; r < code.h_x.rows(); ++r)
        CHECK(logical_class_of(prob, code.h_x.row_as_bitvec(r)) == BitVec(12));
}

TEST_CASE("presets") {
    CHECK(is_known_preset("rep3"));
    CHECK(is_known_preset("bb144"));
    CHECK(!is_known_preset("bb288"));
    CHECK_THROWS(preset_problem("bb288", 0.01));
    auto p = preset_problem("bb144", 0.001);
    CHECK(p.num_faults() == 144);
    CHECK(p.num_detectors() == 72);
}

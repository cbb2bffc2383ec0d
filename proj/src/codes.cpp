#include "fg/codes.hpp"

#include <algorithm>
#include <stdexcept>

namespace fg {

namespace {

// Incrementally maintained GF(2) span for independence tests.
struct IncSpan {
    std::vector<BitVec> rows;        // reduced rows
    std::vector<std::size_t> pivots; // pivot column of each reduced row

    bool add(BitVec v) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) v ^= rows[i];
        if (!v.any()) return false;
        std::size_t piv = 0;
        while (!v.get(piv)) ++piv;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].get(piv)) rows[i] ^= v;
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    }
};

}  // namespace

DecodingProblem repetition_problem(std::size_t n, double p) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("repetition_problem: n must be odd >= 3");
    if (!(p >= 0.0 && p < 0.5)) throw std::invalid_argument("repetition_problem: p outside [0, 1/2)");
    SparseBitMatrix h(n - 1, n), a(1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h.add_entry(i, i);
        h.add_entry(i, i + 1);
    }
    a.add_entry(0, 0);
    return DecodingProblem::make(std::move(h), std::move(a), std::vector<double>(n, p));
}

DecodingProblem repetition_phenom_problem(std::size_t n, std::size_t rounds,
                                          double p_data, double p_meas) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("repetition_phenom_problem: n must be odd >= 3");
    if (rounds < 1) throw std::invalid_argument("repetition_phenom_problem: rounds must be >= 1");
    if (!(p_data >= 0.0 && p_data < 0.5) || !(p_meas >= 0.0 && p_meas < 0.5))
        throw std::invalid_argument("repetition_phenom_problem: probability outside [0, 1/2)");

    std::size_t nc = n - 1;                   // checks per round
    std::size_t num_det = nc * rounds;
    std::size_t n_data = n * rounds;          // data flip before round r on qubit q
    std::size_t n_meas = nc * (rounds - 1);   // noisy measurement, final round noiseless
    SparseBitMatrix h(num_det, n_data + n_meas), a(1, n_data + n_meas);
    std::vector<double> priors(n_data + n_meas);

    auto det = [nc](std::size_t r, std::size_t c) { return r * nc + c; };
    std::size_t j = 0;
    for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t q = 0; q < n; ++q, ++j) {
            // persistent flip first seen by round r's detectors of adjacent checks
            if (q > 0) h.add_entry(det(r, q - 1), j);
            if (q + 1 < n) h.add_entry(det(r, q), j);
            if (q == 0) a.add_entry(0, j);
            priors[j] = p_data;
        }
    }
    for (std::size_t r = 0; r + 1 < rounds; ++r) {
        for (std::size_t c = 0; c < nc; ++c, ++j) {
            h.add_entry(det(r, c), j);
            h.add_entry(det(r + 1, c), j);
            priors[j] = p_meas;
        }
    }
    return DecodingProblem::make(std::move(h), std::move(a), std::move(priors));
}

namespace {

// Evaluates a bivariate polynomial on the commuting shifts: lm x lm circulant sum.
SparseBitMatrix eval_poly(std::size_t l, std::size_t m, const BivariatePoly& poly) {
    // reduce exponents mod (l, m); duplicate terms cancel over GF(2)
    std::vector<std::pair<int, int>> terms;
    for (auto [ea, eb] : poly.terms) {
        int ra = ((ea % static_cast<int>(l)) + static_cast<int>(l)) % static_cast<int>(l);
        int rb = ((eb % static_cast<int>(m)) + static_cast<int>(m)) % static_cast<int>(m);
        auto it = std::find(terms.begin(), terms.end(), std::make_pair(ra, rb));
        if (it != terms.end()) terms.erase(it); else terms.emplace_back(ra, rb);
    }
    if (terms.empty()) throw std::invalid_argument("bb_code: polynomial vanishes mod (l, m)");
    std::size_t lm = l * m;
    std::vector<std::vector<std::uint32_t>> support(lm);
    for (std::size_t u = 0; u < l; ++u) {
        for (std::size_t v = 0; v < m; ++v) {
            auto& row = support[u * m + v];
            for (auto [ea, eb] : terms)
                row.push_back(static_cast<std::uint32_t>(((u + ea) % l) * m + (v + eb) % m));
        }
    }
    return SparseBitMatrix::from_rows(lm, lm, std::move(support));
}

SparseBitMatrix hstack(const SparseBitMatrix& left, const SparseBitMatrix& right) {
    std::vector<std::vector<std::uint32_t>> support(left.rows());
    for (std::size_t r = 0; r < left.rows(); ++r) {
        support[r].assign(left.row(r).begin(), left.row(r).end());
        for (auto c : right.row(r))
            support[r].push_back(static_cast<std::uint32_t>(c + left.cols()));
    }
    return SparseBitMatrix::from_rows(left.rows(), left.cols() + right.cols(),
                                      std::move(support));
}

}  // namespace

CssCode bb_code(std::size_t l, std::size_t m, const BivariatePoly& a, const BivariatePoly& b) {
    if (l < 1 || m < 1) throw std::invalid_argument("bb_code: l, m must be >= 1");
    if (a.terms.empty() || b.terms.empty()) throw std::invalid_argument("bb_code: empty polynomial");
    SparseBitMatrix am = eval_poly(l, m, a);
    SparseBitMatrix bm = eval_poly(l, m, b);
    CssCode code;
    code.h_x = hstack(am, bm);
    code.h_z = hstack(bm.transposed(), am.transposed());
    code.n = 2 * l * m;
    code.k = code.n - rank(code.h_x) - rank(code.h_z);
    auto [ax, az] = css_logicals(code.h_x, code.h_z);
    code.a_x = std::move(ax);
    code.a_z = std::move(az);
    return code;
}

std::pair<SparseBitMatrix, SparseBitMatrix> css_logicals(const SparseBitMatrix& h_x,
                                                         const SparseBitMatrix& h_z) {
    std::size_t n = h_x.cols();
    if (h_z.cols() != n) throw std::invalid_argument("css_logicals: column mismatch");

    auto pick_logicals = [n](const SparseBitMatrix& stabilizers,
                             const std::vector<BitVec>& kernel) {
        IncSpan span;
        for (std::size_t r = 0; r < stabilizers.rows(); ++r)
            span.add(stabilizers.row_as_bitvec(r));
        std::vector<BitVec> out;
        for (const auto& v : kernel)
            if (span.add(v)) out.push_back(v);
        return out;
    };

    std::vector<BitVec> lx = pick_logicals(h_x, kernel_basis(h_z));
    std::vector<BitVec> lz = pick_logicals(h_z, kernel_basis(h_x));
    if (lx.size() != lz.size())
        throw std::logic_error("css_logicals: X/Z logical counts disagree");
    std::size_t k = lx.size();

    // pairing matrix M_ij = <lx_i, lz_j>; replace lz by M^-T * lz so pairing = I
    std::vector<BitVec> pairing(k, BitVec(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (lx[i].dot(lz[j])) pairing[i].set(j, true);

    // invert M over GF(2) with an augmented identity
    std::vector<BitVec> aug(k, BitVec(2 * k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i].set(j, pairing[i].get(j));
        aug[i].set(k + i, true);
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (piv < k && !aug[piv].get(col)) ++piv;
        if (piv == k) throw std::logic_error("css_logicals: degenerate logical pairing");
        std::swap(aug[col], aug[piv]);
        for (std::size_t r = 0; r < k; ++r)
            if (r != col && aug[r].get(col)) aug[r] ^= aug[col];
    }
    // inv[i][j] = aug[i][k + j]; new lz_i = sum_j inv^T[i][j] lz_j = sum_j inv[j][i] lz_j
    std::vector<BitVec> lz_adj(k, BitVec(n));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (aug[j].get(k + i)) lz_adj[i] ^= lz[j];

    return {SparseBitMatrix::from_dense(lx, n), SparseBitMatrix::from_dense(lz_adj, n)};
}

DecodingProblem css_side_problem(const CssCode& code, CssSide side, double p) {
    if (!(p >= 0.0 && p < 0.5)) throw std::invalid_argument("css_side_problem: p outside [0, 1/2)");
    const SparseBitMatrix& h = side == CssSide::Z ? code.h_z : code.h_x;
    const SparseBitMatrix& a = side == CssSide::Z ? code.a_z : code.a_x;
    return DecodingProblem::make(h, a, std::vector<double>(code.n, p));
}

namespace {

BivariatePoly bb_poly_a() { return {{{3, 0}, {0, 1}, {0, 2}}}; }  // x^3 + y + y^2
BivariatePoly bb_poly_b() { return {{{0, 3}, {1, 0}, {2, 0}}}; }  // y^3 + x + x^2

}  // namespace

bool is_known_preset(const std::string& name) {
    return name == "rep3" || name == "rep5" || name == "bb72" || name == "bb144";
}

DecodingProblem preset_problem(const std::string& name, double p) {
    if (name == "rep3") return repetition_problem(3, p);
    if (name == "rep5") return repetition_problem(5, p);
    if (name == "bb72") return css_side_problem(bb_code(6, 6, bb_poly_a(), bb_poly_b()), CssSide::Z, p);
    if (name == "bb144") return css_side_problem(bb_code(12, 6, bb_poly_a(), bb_poly_b()), CssSide::Z, p);
    throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace fg

#include "fg/f2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fg {

BitVec::BitVec(std::initializer_list<int> bits) : BitVec(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) set(i++, b != 0);
}

BitVec BitVec::from_string(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') v.set(i, true);
        else if (s[i] != '0') throw std::invalid_argument("BitVec::from_string: bad char");
    }
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec xor: length mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool BitVec::lex_less(const BitVec& o) const {
    std::size_t nw = std::min(w_.size(), o.w_.size());
    for (std::size_t i = 0; i < nw; ++i) {
        std::uint64_t d = w_[i] ^ o.w_[i];
        if (d) {
            int bit = std::countr_zero(d);
            return !((w_[i] >> bit) & 1);
        }
    }
    return n_ < o.n_;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
}

bool BitVec::any() const {
    for (auto w : w_) if (w) return true;
    return false;
}

bool BitVec::dot(const BitVec& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitVec dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
    return s;
}

std::string BitVec::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::size_t nd = (n_ + 3) / 4;
    if (nd == 0) nd = 1;
    std::string s(nd, '0');
    // digit d holds bits 4d..4d+3; most significant digit printed first
    for (std::size_t d = 0; d < nd; ++d) {
        unsigned val = 0;
        for (unsigned b = 0; b < 4; ++b) {
            std::size_t i = 4 * d + b;
            if (i < n_ && get(i)) val |= 1u << b;
        }
        s[nd - 1 - d] = digits[val];
    }
    return s;
}

std::uint64_t BitVec::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (auto w : w_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return h;
}

SparseBitMatrix SparseBitMatrix::from_rows(std::size_t rows, std::size_t cols,
                                           std::vector<std::vector<std::uint32_t>> support) {
    if (support.size() != rows) throw std::invalid_argument("from_rows: row count mismatch");
    SparseBitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        auto& s = support[r];
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] >= cols) throw std::invalid_argument("from_rows: column out of range");
            if (i > 0 && s[i] == s[i - 1]) throw std::invalid_argument("from_rows: duplicate entry");
        }
        m.row_support_[r] = std::move(s);
    }
    return m;
}

SparseBitMatrix SparseBitMatrix::from_dense(const std::vector<BitVec>& rows, std::size_t cols) {
    SparseBitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("from_dense: length mismatch");
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r].get(c)) m.row_support_[r].push_back(static_cast<std::uint32_t>(c));
    }
    return m;
}

void SparseBitMatrix::add_entry(std::size_t r, std::size_t c) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("add_entry: index out of range");
    auto& s = row_support_[r];
    auto it = std::lower_bound(s.begin(), s.end(), static_cast<std::uint32_t>(c));
    if (it != s.end() && *it == c) throw std::invalid_argument("add_entry: duplicate entry");
    s.insert(it, static_cast<std::uint32_t>(c));
}

bool SparseBitMatrix::get(std::size_t r, std::size_t c) const {
    const auto& s = row_support_[r];
    return std::binary_search(s.begin(), s.end(), static_cast<std::uint32_t>(c));
}

BitVec SparseBitMatrix::row_as_bitvec(std::size_t r) const {
    BitVec v(cols_);
    for (auto c : row_support_[r]) v.set(c, true);
    return v;
}

std::vector<BitVec> SparseBitMatrix::to_dense() const {
    std::vector<BitVec> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_as_bitvec(r));
    return out;
}

SparseBitMatrix SparseBitMatrix::transposed() const {
    SparseBitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (auto c : row_support_[r])
            t.row_support_[c].push_back(static_cast<std::uint32_t>(r));
    return t;
}

BitVec mat_vec_mul(const SparseBitMatrix& m, const BitVec& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("mat_vec_mul: dimension mismatch");
    BitVec out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        unsigned parity = 0;
        for (auto c : m.row(r)) parity ^= v.get(c) ? 1u : 0u;
        if (parity) out.set(r, true);
    }
    return out;
}

namespace {

// Row echelon form over GF(2) on a dense copy; pivots recorded as (row, col).
struct Echelon {
    std::vector<BitVec> rows;
    std::vector<std::size_t> pivot_cols;  // pivot column of echelon row i
};

Echelon eliminate(std::vector<BitVec> rows, std::size_t cols) {
    Echelon e;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && !rows[piv].get(col)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
        e.pivot_cols.push_back(col);
        ++rank;
    }
    rows.resize(rank, BitVec(cols));
    e.rows = std::move(rows);
    return e;
}

}  // namespace

std::size_t rank(const SparseBitMatrix& m) {
    return eliminate(m.to_dense(), m.cols()).pivot_cols.size();
}

std::vector<BitVec> kernel_basis(const SparseBitMatrix& m) {
    Echelon e = eliminate(m.to_dense(), m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<BitVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVec v(m.cols());
        v.set(f, true);
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            if (e.rows[r].get(f)) v.set(e.pivot_cols[r], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<BitVec> solve(const SparseBitMatrix& m, const BitVec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    // augment each row with its rhs bit at column cols
    std::vector<BitVec> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BitVec v(m.cols() + 1);
        for (auto c : m.row(r)) v.set(c, true);
        v.set(m.cols(), b.get(r));
        rows.push_back(std::move(v));
    }
    Echelon e = eliminate(std::move(rows), m.cols());  // never pivot on rhs column
    BitVec x(m.cols());
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        bool rhs = r < e.pivot_cols.size() ? e.rows[r].get(m.cols()) : false;
        if (r < e.pivot_cols.size()) {
            if (rhs) x.set(e.pivot_cols[r], true);
        }
    }
    // rows beyond rank must have zero rhs
    for (std::size_t r = e.pivot_cols.size(); r < e.rows.size(); ++r)
        if (e.rows[r].get(m.cols())) return std::nullopt;
    // eliminate() dropped zero rows, so recheck consistency directly
    if (mat_vec_mul(m, x) != b) return std::nullopt;
    return x;
}

SparseBitMatrix append_row(const SparseBitMatrix& m, const BitVec& r) {
    if (r.size() != m.cols()) throw std::invalid_argument("append_row: dimension mismatch");
    std::vector<std::vector<std::uint32_t>> support;
    support.reserve(m.rows() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        support.emplace_back(m.row(i).begin(), m.row(i).end());
    std::vector<std::uint32_t> last;
    for (std::size_t c = 0; c < r.size(); ++c)
        if (r.get(c)) last.push_back(static_cast<std::uint32_t>(c));
    support.push_back(std::move(last));
    return SparseBitMatrix::from_rows(m.rows() + 1, m.cols(), std::move(support));
}

SparseBitMatrix drop_last_row(const SparseBitMatrix& m) {
    if (m.rows() == 0) throw std::invalid_argument("drop_last_row: empty matrix");
    std::vector<std::vector<std::uint32_t>> support;
    support.reserve(m.rows() - 1);
    for (std::size_t i = 0; i + 1 < m.rows(); ++i)
        support.emplace_back(m.row(i).begin(), m.row(i).end());
    return SparseBitMatrix::from_rows(m.rows() - 1, m.cols(), std::move(support));
}

std::vector<BitVec> mat_mat_mul(const SparseBitMatrix& a, const SparseBitMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mat_mul: dimension mismatch");
    std::vector<BitVec> out;
    out.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        BitVec acc(b.cols());
        for (auto k : a.row(r)) acc ^= b.row_as_bitvec(k);
        out.push_back(std::move(acc));
    }
    return out;
}

}  // namespace fg

#ifndef FG_F2_HPP
#define FG_F2_HPP

#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fg {

// Fixed-length bit vector over GF(2), packed 64 bits per word.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t len) : n_(len), w_((len + 63) / 64, 0) {}
    BitVec(std::initializer_list<int> bits);

    static BitVec from_string(const std::string& s);  // e.g. "1011"

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Lexicographic on bit sequence: first differing index decides, 0 < 1.
    bool lex_less(const BitVec& o) const;

    std::size_t popcount() const;
    bool any() const;
    bool dot(const BitVec& o) const;  // parity of AND

    std::span<const std::uint64_t> words() const { return w_; }
    std::string to_string() const;
    std::string to_hex() const;  // bit i -> bit i of the value, ceil(n/4) digits
    std::uint64_t hash() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Row-sparse binary matrix; per-row column indices sorted strictly increasing.
class SparseBitMatrix {
public:
    SparseBitMatrix() = default;
    SparseBitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), row_support_(rows) {}

    static SparseBitMatrix from_rows(std::size_t rows, std::size_t cols,
                                     std::vector<std::vector<std::uint32_t>> support);
    static SparseBitMatrix from_dense(const std::vector<BitVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::span<const std::uint32_t> row(std::size_t r) const { return row_support_[r]; }

    void add_entry(std::size_t r, std::size_t c);  // keeps row sorted, rejects duplicates
    bool get(std::size_t r, std::size_t c) const;

    BitVec row_as_bitvec(std::size_t r) const;
    std::vector<BitVec> to_dense() const;
    SparseBitMatrix transposed() const;

    bool operator==(const SparseBitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && row_support_ == o.row_support_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::uint32_t>> row_support_;
};

BitVec mat_vec_mul(const SparseBitMatrix& m, const BitVec& v);
std::size_t rank(const SparseBitMatrix& m);
std::vector<BitVec> kernel_basis(const SparseBitMatrix& m);
// Particular solution with free variables set to 0; nullopt if inconsistent.
std::optional<BitVec> solve(const SparseBitMatrix& m, const BitVec& b);
SparseBitMatrix append_row(const SparseBitMatrix& m, const BitVec& r);
SparseBitMatrix drop_last_row(const SparseBitMatrix& m);

// Product of sparse matrices, dense output rows (used by code construction).
std::vector<BitVec> mat_mat_mul(const SparseBitMatrix& a, const SparseBitMatrix& b);

}  // namespace fg

#endif

#ifndef QTANNER_GF2_HPP
#define QTANNER_GF2_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qtanner/error.hpp"

namespace qtanner {

/// Dense bit vector over GF(2), packed into 64-bit words. Bits past size() are kept zero.
class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

    static BitVector from_bits(std::span<const int> bits)
    {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] & 1) v.set(i);
        return v;
    }

    static std::size_t words_for(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1U; }
    void set(std::size_t i, bool value = true)
    {
        const Word mask = Word{1} << (i % word_bits);
        if (value)
            words_[i / word_bits] |= mask;
        else
            words_[i / word_bits] &= ~mask;
    }
    void flip(std::size_t i) { words_[i / word_bits] ^= Word{1} << (i % word_bits); }

    BitVector& operator^=(const BitVector& other)
    {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    std::size_t weight() const
    {
        std::size_t total = 0;
        for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    bool is_zero() const
    {
        return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
    }

    /// Parity of the bitwise AND, i.e. the GF(2) inner product.
    bool dot(const BitVector& other) const
    {
        Word acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
        return std::popcount(acc) & 1;
    }

    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    std::string to_string() const
    {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

/// Dense row-major bit-packed matrix over GF(2).
///
/// Shape is fixed at construction. Every row occupies stride() words and the
/// padding bits past cols() are always zero, so word-wise comparisons and
/// popcounts are exact.
class BitMatrix {
public:
    using Word = BitVector::Word;
    static constexpr std::size_t word_bits = BitVector::word_bits;

    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(BitVector::words_for(cols)), data_(rows * stride_, 0)
    {
    }

    static BitMatrix identity(std::size_t n)
    {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    /// Builds from nested 0/1 rows; all rows must have the same length.
    static BitMatrix from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols_if_empty = 0)
    {
        const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
        BitMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols)
                throw Error(ErrorKind::dimension, "ragged row " + std::to_string(r) + " in matrix literal");
            for (std::size_t c = 0; c < cols; ++c)
                if (rows[r][c] & 1) m.set(r, c);
        }
        return m;
    }

    /// Parses rows of '0'/'1' characters, e.g. {"110", "011"}.
    static BitMatrix from_strings(const std::vector<std::string>& rows, std::size_t cols_if_empty = 0)
    {
        const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
        BitMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols)
                throw Error(ErrorKind::dimension, "ragged row " + std::to_string(r) + " in matrix literal");
            for (std::size_t c = 0; c < cols; ++c) {
                if (rows[r][c] == '1')
                    m.set(r, c);
                else if (rows[r][c] != '0')
                    throw Error(ErrorKind::parse, "matrix literal may only contain '0' and '1'");
            }
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const
    {
        return (data_[r * stride_ + c / word_bits] >> (c % word_bits)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool value = true)
    {
        const Word mask = Word{1} << (c % word_bits);
        Word& w = data_[r * stride_ + c / word_bits];
        w = value ? (w | mask) : (w & ~mask);
    }
    void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / word_bits] ^= Word{1} << (c % word_bits); }

    std::span<const Word> row_words(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }
    std::span<Word> row_words(std::size_t r) { return {data_.data() + r * stride_, stride_}; }

    BitVector row(std::size_t r) const
    {
        BitVector v(cols_);
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_, v.words().begin());
        return v;
    }

    void set_row(std::size_t r, const BitVector& v)
    {
        if (v.size() != cols_) throw Error(ErrorKind::dimension, "row length does not match matrix width");
        std::copy(v.words().begin(), v.words().end(), data_.begin() + static_cast<std::ptrdiff_t>(r * stride_));
    }

    /// row(dst) ^= row(src)
    void add_row(std::size_t dst, std::size_t src)
    {
        Word* d = data_.data() + dst * stride_;
        const Word* s = data_.data() + src * stride_;
        for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                         data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                         data_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
    }

    std::size_t row_weight(std::size_t r) const
    {
        std::size_t total = 0;
        for (Word w : row_words(r)) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    std::size_t col_weight(std::size_t c) const
    {
        std::size_t total = 0;
        for (std::size_t r = 0; r < rows_; ++r) total += get(r, c);
        return total;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
    }

    BitMatrix transpose() const
    {
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r);
        return t;
    }

    /// Rows of *this stacked above the rows of `below`.
    BitMatrix vstack(const BitMatrix& below) const
    {
        if (below.cols_ != cols_) throw Error(ErrorKind::dimension, "vstack width mismatch");
        BitMatrix out(rows_ + below.rows_, cols_);
        std::copy(data_.begin(), data_.end(), out.data_.begin());
        std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
        return out;
    }

    std::vector<std::string> to_strings() const
    {
        std::vector<std::string> out;
        out.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r).to_string());
        return out;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> data_;
};

/// Product over GF(2). Row r of the result is the XOR of rows of b selected by row r of a.
inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b)
{
    if (a.cols() != b.rows()) throw Error(ErrorKind::dimension, "multiply: inner dimensions differ");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto dst = out.row_words(r);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (!a.get(r, k)) continue;
            auto src = b.row_words(k);
            for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
        }
    }
    return out;
}

/// a * b^T, computed with row dot products so neither operand is transposed.
inline BitMatrix multiply_transpose(const BitMatrix& a, const BitMatrix& b)
{
    if (a.cols() != b.cols()) throw Error(ErrorKind::dimension, "multiply_transpose: widths differ");
    BitMatrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ra = a.row_words(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            auto rb = b.row_words(j);
            BitMatrix::Word acc = 0;
            for (std::size_t w = 0; w < ra.size(); ++w) acc ^= ra[w] & rb[w];
            if (std::popcount(acc) & 1) out.set(i, j);
        }
    }
    return out;
}

/// Reduced row echelon form. Pivots are the leftmost nonzero column of each
/// successive row, taking the topmost available row, so the result is a
/// deterministic function of the input.
struct Echelon {
    BitMatrix reduced;                 ///< rank() nonzero rows first, fully reduced
    std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row

    std::size_t rank() const { return pivots.size(); }
};

inline Echelon row_reduce(BitMatrix m)
{
    Echelon out;
    std::size_t next = 0;
    for (std::size_t c = 0; c < m.cols() && next < m.rows(); ++c) {
        std::size_t p = next;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, next);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != next && m.get(r, c)) m.add_row(r, next);
        out.pivots.push_back(c);
        ++next;
    }
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const BitMatrix& m) { return row_reduce(m).rank(); }

/// Basis of {x : m x^T = 0}, one basis vector per row, one per free column in increasing order.
inline BitMatrix nullspace_basis(const BitMatrix& m)
{
    const Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;

    BitMatrix basis(m.cols() - e.rank(), m.cols());
    std::size_t out_row = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis.set(out_row, free);
        for (std::size_t i = 0; i < e.rank(); ++i)
            if (e.reduced.get(i, free)) basis.set(out_row, e.pivots[i]);
        ++out_row;
    }
    return basis;
}

/// Kronecker product: entry (i*rows(b)+j, k*cols(b)+l) = a(i,k) b(j,l), 0-based.
inline BitMatrix kron(const BitMatrix& a, const BitMatrix& b)
{
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (!a.get(i, k)) continue;
            for (std::size_t j = 0; j < b.rows(); ++j)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (b.get(j, l)) out.set(i * b.rows() + j, k * b.cols() + l);
        }
    return out;
}

/// Row space membership oracle that reuses one echelon form across many queries.
class RowSpace {
public:
    explicit RowSpace(const BitMatrix& m) : echelon_(row_reduce(m)), cols_(m.cols()) {}

    std::size_t dimension() const { return echelon_.rank(); }
    std::size_t length() const { return cols_; }

    bool contains(BitVector v) const
    {
        if (v.size() != cols_) throw Error(ErrorKind::dimension, "vector length does not match matrix width");
        for (std::size_t i = 0; i < echelon_.rank(); ++i) {
            if (!v.get(echelon_.pivots[i])) continue;
            auto row = echelon_.reduced.row_words(i);
            auto dst = v.words();
            for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= row[w];
        }
        return v.is_zero();
    }

private:
    Echelon echelon_;
    std::size_t cols_;
};

inline bool row_space_contains(const BitMatrix& m, const BitVector& v)
{
    return RowSpace(m).contains(v);
}

} // namespace qtanner

#endif // QTANNER_GF2_HPP

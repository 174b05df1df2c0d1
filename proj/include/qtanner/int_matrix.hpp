#ifndef QTANNER_INT_MATRIX_HPP
#define QTANNER_INT_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qtanner/error.hpp"

namespace qtanner {

/// Small dense integer matrix for adjacency algebra (row-major).
class IntMatrix {
public:
    using Value = std::int64_t;

    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Value>>& rows)
    {
        IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) throw Error(ErrorKind::dimension, "ragged integer matrix literal");
            for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Value& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Value operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_square() const { return rows_ == cols_; }

    bool is_symmetric() const
    {
        if (!is_square()) return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r + 1; c < cols_; ++c)
                if ((*this)(r, c) != (*this)(c, r)) return false;
        return true;
    }

    Value trace() const
    {
        Value t = 0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    /// Copy of the block [r0, r0+nr) x [c0, c0+nc).
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::dimension, "block out of range");
        IntMatrix b(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b)
    {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorKind::dimension, "block out of range");
        for (std::size_t r = 0; r < b.rows_; ++r)
            for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
    }

    bool is_zero() const
    {
        for (Value v : data_)
            if (v != 0) return false;
        return true;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_) throw Error(ErrorKind::dimension, "integer product: inner dimensions differ");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Value x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
            }
        return out;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::dimension, "integer sum: shapes differ");
        IntMatrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
        return out;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    std::vector<std::vector<Value>> to_rows() const
    {
        std::vector<std::vector<Value>> out(rows_, std::vector<Value>(cols_));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Value> data_;
};

/// [[a, b], [c, d]] assembled from four conforming blocks.
inline IntMatrix block_matrix(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c, const IntMatrix& d)
{
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
        throw Error(ErrorKind::dimension, "block matrix: blocks do not conform");
    IntMatrix out(a.rows() + c.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    out.set_block(a.rows(), 0, c);
    out.set_block(a.rows(), a.cols(), d);
    return out;
}

} // namespace qtanner

#endif // QTANNER_INT_MATRIX_HPP

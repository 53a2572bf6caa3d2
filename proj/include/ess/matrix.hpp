#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ess {

using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Integer& x) { return x.str(); }

/// Dense integer matrix, row-major. Sizes are tiny (one RO(C2) degree at a time).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer");
            for (long v : row)
                data_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Integer> column(std::size_t c) const
    {
        std::vector<Integer> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t r = 0; r < rows_; ++r)
            std::swap((*this)(r, a), (*this)(r, b));
    }
    /// row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& k)
    {
        if (k == 0)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            (*this)(dst, c) += k * (*this)(src, c);
    }
    /// col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& k)
    {
        if (k == 0)
            return;
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, dst) += k * (*this)(r, src);
    }
    void negate_row(std::size_t r)
    {
        for (std::size_t c = 0; c < cols_; ++c)
            (*this)(r, c) = -(*this)(r, c);
    }
    void negate_col(std::size_t c)
    {
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, c) = -(*this)(r, c);
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                m(i, j) += a(i, k) * b(k, j);
        }
    return m;
}

inline std::vector<Integer> operator*(const Matrix& a, const std::vector<Integer>& v)
{
    if (a.cols() != v.size())
        throw std::invalid_argument("Matrix-vector product: shape mismatch");
    std::vector<Integer> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (v[k] != 0)
                out[i] += a(i, k) * v[k];
    return out;
}

/// Horizontal concatenation [a | b]; row counts must agree (an empty side may have 0 columns).
inline Matrix hconcat(const Matrix& a, const Matrix& b)
{
    const std::size_t rows = a.cols() ? a.rows() : b.rows();
    if (a.cols() && b.cols() && a.rows() != b.rows())
        throw std::invalid_argument("hconcat: row mismatch");
    Matrix m(rows, a.cols() + b.cols());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            m(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c)
            m(r, a.cols() + c) = b(r, c);
    }
    return m;
}

inline Matrix from_columns(std::size_t rows, const std::vector<std::vector<Integer>>& cols)
{
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows)
            throw std::invalid_argument("from_columns: length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = cols[c][r];
    }
    return m;
}

inline Matrix select_columns(const Matrix& m, std::size_t begin, std::size_t end)
{
    Matrix out(m.rows(), end - begin);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = begin; c < end; ++c)
            out(r, c - begin) = m(r, c);
    return out;
}

inline Matrix select_rows(const Matrix& m, std::size_t begin, std::size_t end)
{
    Matrix out(end - begin, m.cols());
    for (std::size_t r = begin; r < end; ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(r - begin, c) = m(r, c);
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& m)
{
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c)
            os << (c ? ", " : "") << m(r, c);
        os << ']';
    }
    return os << ']';
}

}  // namespace ess

#pragma once

#include "ess/smith.hpp"

#include <optional>
#include <vector>

namespace ess {

/// Solver for A x = y over the integers, reusing one Smith decomposition of A.
class IntegerSolver {
public:
    IntegerSolver() = default;
    explicit IntegerSolver(const Matrix& a) : rows_(a.rows()), cols_(a.cols()), smith_(smith_normal_form(a)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return smith_.rank; }
    const SmithForm& smith() const { return smith_; }

    std::optional<std::vector<Integer>> solve(const std::vector<Integer>& y) const
    {
        if (y.size() != rows_)
            throw std::invalid_argument("IntegerSolver: rhs length mismatch");
        if (rows_ == 0)
            return std::vector<Integer>(cols_);
        std::vector<Integer> z = smith_.u * y;
        std::vector<Integer> w(cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i < smith_.rank) {
                const Integer& d = smith_.factor(i);
                if (z[i] % d != 0)
                    return std::nullopt;
                w[i] = z[i] / d;
            }
            else if (z[i] != 0)
                return std::nullopt;
        }
        if (cols_ == 0)
            return w;
        return smith_.v * w;
    }

    bool solvable(const std::vector<Integer>& y) const { return solve(y).has_value(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    SmithForm smith_;
};

/// Flip columns so their first nonzero entry is positive (stable generator names).
inline void normalize_column_signs(Matrix& m)
{
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m(r, c) != 0) {
                if (m(r, c) < 0)
                    m.negate_col(c);
                break;
            }
}

/// Basis (as columns) of the lattice spanned by the columns of g, inside Z^rows.
inline Matrix lattice_basis(const Matrix& g, std::size_t rows)
{
    if (g.cols() == 0)
        return Matrix(rows, 0);
    SmithForm s = smith_normal_form(g);
    Matrix basis(rows, s.rank);
    for (std::size_t i = 0; i < s.rank; ++i)
        for (std::size_t r = 0; r < rows; ++r)
            basis(r, i) = s.u_inverse(r, i) * s.factor(i);
    normalize_column_signs(basis);
    return basis;
}

/// Basis (as columns) of {x : a x = 0}.
inline Matrix integer_nullspace(const Matrix& a)
{
    if (a.rows() == 0)
        return Matrix::identity(a.cols());
    SmithForm s = smith_normal_form(a);
    Matrix basis(a.cols(), a.cols() - s.rank);
    for (std::size_t j = s.rank; j < a.cols(); ++j)
        for (std::size_t r = 0; r < a.cols(); ++r)
            basis(r, j - s.rank) = s.v(r, j);
    normalize_column_signs(basis);
    return basis;
}

/// Basis of {x in Z^(source) : m x lies in the lattice spanned by the columns of rel}.
inline Matrix preimage_lattice(const Matrix& m, const Matrix& rel)
{
    const std::size_t n = m.cols();
    if (m.rows() == 0)
        return Matrix::identity(n);
    Matrix stacked = hconcat(m, rel);
    Matrix null = integer_nullspace(stacked);
    Matrix top = select_rows(null, 0, n);
    return lattice_basis(top, n);
}

inline bool columns_in_lattice(const Matrix& cols, const IntegerSolver& lattice)
{
    for (std::size_t c = 0; c < cols.cols(); ++c)
        if (!lattice.solvable(cols.column(c)))
            return false;
    return true;
}

}  // namespace ess

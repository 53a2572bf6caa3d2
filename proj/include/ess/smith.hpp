#pragma once

#include "ess/matrix.hpp"

#include <optional>
#include <utility>

namespace ess {

/// U * m * V = diagonal, with U, V unimodular and diag(0) | diag(1) | ... .
/// u_inverse is maintained alongside U so lattice bases can be read off without inversion.
struct SmithForm {
    Matrix u;
    Matrix u_inverse;
    Matrix diagonal;
    Matrix v;
    std::size_t rank = 0;

    const Integer& factor(std::size_t i) const { return diagonal(i, i); }
};

namespace detail {

struct SmithWork {
    Matrix d, u, uinv, v;

    void swap_rows(std::size_t a, std::size_t b)
    {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        uinv.swap_cols(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
    }
    void add_row(std::size_t dst, std::size_t src, const Integer& k)
    {
        d.add_row(dst, src, k);
        u.add_row(dst, src, k);
        uinv.add_col(src, dst, -k);
    }
    void add_col(std::size_t dst, std::size_t src, const Integer& k)
    {
        d.add_col(dst, src, k);
        v.add_col(dst, src, k);
    }
    void negate_row(std::size_t r)
    {
        d.negate_row(r);
        u.negate_row(r);
        uinv.negate_col(r);
    }

    // Smallest nonzero |entry| in the trailing block starting at t.
    std::optional<std::pair<std::size_t, std::size_t>> min_entry(std::size_t t) const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_abs;
        for (std::size_t i = t; i < d.rows(); ++i)
            for (std::size_t j = t; j < d.cols(); ++j) {
                const Integer& x = d(i, j);
                if (x == 0)
                    continue;
                Integer ax = abs(x);
                if (!best || ax < best_abs) {
                    best = {i, j};
                    best_abs = ax;
                    if (best_abs == 1)
                        return best;
                }
            }
        return best;
    }
};

}  // namespace detail

inline SmithForm smith_normal_form(const Matrix& m)
{
    detail::SmithWork w{m, Matrix::identity(m.rows()), Matrix::identity(m.rows()), Matrix::identity(m.cols())};
    const std::size_t n = std::min(m.rows(), m.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
        auto pivot = w.min_entry(t);
        if (!pivot)
            break;
        w.swap_rows(t, pivot->first);
        w.swap_cols(t, pivot->second);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < w.d.rows(); ++i) {
                if (w.d(i, t) == 0)
                    continue;
                Integer q = w.d(i, t) / w.d(t, t);
                w.add_row(i, t, -q);
                if (w.d(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < w.d.cols(); ++j) {
                if (w.d(t, j) == 0)
                    continue;
                Integer q = w.d(t, j) / w.d(t, t);
                w.add_col(j, t, -q);
                if (w.d(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                // Move the smallest remainder in row/column t onto the pivot.
                std::size_t bi = t, bj = t;
                Integer best = abs(w.d(t, t));
                for (std::size_t i = t + 1; i < w.d.rows(); ++i)
                    if (w.d(i, t) != 0 && abs(w.d(i, t)) < best) {
                        best = abs(w.d(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < w.d.cols(); ++j)
                    if (w.d(t, j) != 0 && abs(w.d(t, j)) < best) {
                        best = abs(w.d(t, j));
                        bi = t;
                        bj = j;
                    }
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            // Divisibility chain: pull any offending row into the pivot row.
            bool divides = true;
            for (std::size_t i = t + 1; i < w.d.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < w.d.cols(); ++j)
                    if (w.d(i, j) % w.d(t, t) != 0) {
                        w.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (w.d(t, t) < 0)
            w.negate_row(t);
    }
    return SmithForm{std::move(w.u), std::move(w.uinv), std::move(w.d), std::move(w.v), t};
}

}  // namespace ess

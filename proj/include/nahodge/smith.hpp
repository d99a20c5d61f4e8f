#pragma once

#include <algorithm>
#include <vector>

#include "nahodge/matrix.hpp"
#include "nahodge/rational.hpp"

namespace nahodge {

using IntMatrix = Matrix<Integer>;

struct SmithForm {
    IntMatrix U; // unimodular, rows x rows
    IntMatrix D; // diagonal, d_1 | d_2 | ..., all d_i >= 0
    IntMatrix V; // unimodular, cols x cols
};

namespace detail {

inline void row_op(IntMatrix &m, std::size_t dst, std::size_t src, const Integer &f) {
    // row dst -= f * row src
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(dst, j) -= f * m(src, j);
}
inline void col_op(IntMatrix &m, std::size_t dst, std::size_t src, const Integer &f) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, dst) -= f * m(i, src);
}
inline void swap_cols(IntMatrix &m, std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        std::swap(m(i, a), m(i, b));
}
inline void negate_row(IntMatrix &m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(r, j) = -m(r, j);
}

} // namespace detail

/// Smith normal form with transforms: U * E * V == D.
inline SmithForm smith_normal_form(const IntMatrix &E) {
    const std::size_t R = E.rows(), C = E.cols();
    IntMatrix D = E;
    IntMatrix U = IntMatrix::identity(R, Integer(0), Integer(1));
    IntMatrix V = IntMatrix::identity(C, Integer(0), Integer(1));
    const std::size_t steps = std::min(R, C);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block becomes the pivot
            std::size_t pi = R, pj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (sgn(D(i, j)) != 0 && (pi == R || abs(D(i, j)) < abs(D(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == R)
                return {U, D, V};
            D.swap_rows(t, pi);
            U.swap_rows(t, pi);
            detail::swap_cols(D, t, pj);
            detail::swap_cols(V, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (sgn(D(i, t)) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                detail::row_op(D, i, t, q);
                detail::row_op(U, i, t, q);
                if (sgn(D(i, t)) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (sgn(D(t, j)) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                detail::col_op(D, j, t, q);
                detail::col_op(V, j, t, q);
                if (sgn(D(t, j)) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility: fold a non-divisible row into row t and retry
            bool divisible = true;
            for (std::size_t i = t + 1; i < R && divisible; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (sgn(D(i, j)) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        detail::row_op(D, t, i, Integer(-1));
                        detail::row_op(U, t, i, Integer(-1));
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (sgn(D(t, t)) < 0) {
            detail::negate_row(D, t);
            detail::negate_row(U, t);
        }
    }
    return {U, D, V};
}

/// Determinant of a square integer matrix (exact, via rationals).
inline Integer int_det(const IntMatrix &m) {
    Rational d = det_field(m.map([](const Integer &z) { return Rational(z); }));
    return d.get_num();
}

/// Rank over Q.
inline std::size_t int_rank(const IntMatrix &m) {
    return bareiss_rank(m.map([](const Integer &z) { return Rational(z); }));
}

} // namespace nahodge

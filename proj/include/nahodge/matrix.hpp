#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nahodge/errors.hpp"
#include "nahodge/laurent.hpp"
#include "nahodge/ratfun.hpp"
#include "nahodge/scalar.hpp"

namespace nahodge {

/// Dense row-major rectangular matrix over T.
template <class T> class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T &fill = T{}) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto &row : init) {
            require(row.size() == cols_, "ragged matrix literal");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }
    static Matrix from_rows(const std::vector<std::vector<T>> &rows, std::size_t cols_if_empty = 0) {
        Matrix m(rows.size(), rows.empty() ? cols_if_empty : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == m.cols_, "ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix identity(std::size_t n, const T &zero = T(0), const T &one = T(1)) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = one;
        return m;
    }
    static Matrix diagonal(const std::vector<T> &d, const T &zero = T(0)) {
        Matrix m(d.size(), d.size(), zero);
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    T &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const { return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_}; }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c.push_back((*this)(i, j));
        return c;
    }
    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(i, j), (*this)(k, j));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, a_.empty() ? T{} : a_[0]);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// Submatrix on the given (ordered) rows and columns.
    Matrix select(const std::vector<std::size_t> &rs, const std::vector<std::size_t> &cs) const {
        Matrix m(rs.size(), cs.size(), a_.empty() ? T{} : a_[0]);
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j)
                m(i, j) = (*this)(rs[i], cs[j]);
        return m;
    }

    template <class F> auto map(F f) const {
        using S = decltype(f(std::declval<T>()));
        Matrix<S> m(rows_, cols_, a_.empty() ? S{} : f(a_[0]));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = f((*this)(i, j));
        return m;
    }

    friend Matrix operator*(const Matrix &x, const Matrix &y) {
        require(x.cols_ == y.rows_, "matrix product dimension mismatch");
        Matrix r(x.rows_, y.cols_, x.zero_like(y));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T &xik = x(i, k);
                if (is_zero(xik))
                    continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    if (!is_zero(y(k, j)))
                        r(i, j) += xik * y(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix x, const Matrix &y) {
        require(x.rows_ == y.rows_ && x.cols_ == y.cols_, "matrix sum dimension mismatch");
        for (std::size_t k = 0; k < x.a_.size(); ++k)
            x.a_[k] += y.a_[k];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix &y) {
        require(x.rows_ == y.rows_ && x.cols_ == y.cols_, "matrix difference dimension mismatch");
        for (std::size_t k = 0; k < x.a_.size(); ++k)
            x.a_[k] -= y.a_[k];
        return x;
    }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto &v : m.a_)
            v = -v;
        return m;
    }
    friend Matrix operator*(const T &s, Matrix m) {
        for (auto &v : m.a_)
            v = s * v;
        return m;
    }
    std::vector<T> apply(const std::vector<T> &v) const {
        require(v.size() == cols_, "matrix-vector dimension mismatch");
        std::vector<T> r(rows_, zero_like(*this));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero(v[j]))
                    r[i] += (*this)(i, j) * v[j];
        return r;
    }
    friend bool operator==(const Matrix &x, const Matrix &y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            return false;
        for (std::size_t k = 0; k < x.a_.size(); ++k)
            if (!(x.a_[k] == y.a_[k]))
                return false;
        return true;
    }
    friend bool operator!=(const Matrix &x, const Matrix &y) { return !(x == y); }

    bool is_zero_matrix() const {
        for (const auto &v : a_)
            if (!is_zero(v))
                return false;
        return true;
    }

    const std::vector<T> &data() const { return a_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;

    // A zero of the right "shape" (matters for LaurentPoly, whose zero carries
    // the number of variables).
    T zero_like(const Matrix &other) const {
        const T &probe = !a_.empty() ? a_[0] : (!other.a_.empty() ? other.a_[0] : T{});
        return probe - probe;
    }
};

using ScalarMatrix = Matrix<Scalar>;
using RationalMatrix = Matrix<Rational>;
using LaurentMatrix = Matrix<LaurentPoly>;

inline ScalarMatrix conj(const ScalarMatrix &m) {
    return m.map([](const Scalar &s) { return s.conj(); });
}

// exact division used by fraction-free elimination
inline Scalar exact_div(const Scalar &a, const Scalar &b) { return a / b; }
inline Rational exact_div(const Rational &a, const Rational &b) { return a / b; }
template <class R> Laurent1<R> exact_div(const Laurent1<R> &a, const Laurent1<R> &b) { return exact_quotient(a, b); }

/// Rank by Bareiss fraction-free elimination over an integral domain with
/// exact division. Column skipping keeps every intermediate entry a minor, so
/// the divisions stay exact.
template <class T> std::size_t bareiss_rank(Matrix<T> m) {
    const std::size_t R = m.rows(), C = m.cols();
    if (R == 0 || C == 0)
        return 0;
    T prev = m(0, 0) - m(0, 0) + T(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && is_zero(m(p, c)))
            ++p;
        if (p == R)
            continue;
        m.swap_rows(r, p);
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j) {
                T v = m(r, c) * m(i, j) - m(i, c) * m(r, j);
                m(i, j) = is_zero(v) ? v : exact_div(v, prev);
            }
            m(i, c) = m(i, c) - m(i, c);
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

inline std::size_t rank(const ScalarMatrix &m) { return bareiss_rank(m); }

/// Rank over Q(i)(s). Denominators are cleared row by row; the rank of the
/// polynomial matrix at any point s0 is a lower bound. An (r+1)-minor has degree
/// at most the sum of the r+1 largest row (or column) degrees, so once rank r is
/// the maximum over more points than that, every (r+1)-minor vanishes.
inline std::size_t rank(const Matrix<RatFun> &m) {
    Matrix<SPoly> p(m.rows(), m.cols());
    std::vector<long> row_deg(m.rows(), -1), col_deg(m.cols(), -1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        SPoly l(Scalar(1));
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && !m(i, j).is_polynomial()) {
                const SPoly &d = m(i, j).den();
                l = exact_quotient(l * d, poly_gcd(l, d));
            }
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) {
                p(i, j) = exact_quotient(m(i, j).num() * l, m(i, j).den());
                row_deg[i] = std::max<long>(row_deg[i], p(i, j).max_exp());
                col_deg[j] = std::max<long>(col_deg[j], p(i, j).max_exp());
            }
    }
    std::sort(row_deg.rbegin(), row_deg.rend());
    std::sort(col_deg.rbegin(), col_deg.rend());
    auto minor_degree = [&](std::size_t k) {
        long a = 0, b = 0;
        for (std::size_t t = 0; t < k; ++t) {
            a += std::max<long>(row_deg[t], 0);
            b += std::max<long>(col_deg[t], 0);
        }
        return std::min(a, b);
    };
    const std::size_t nonzero_rows = std::count_if(row_deg.begin(), row_deg.end(), [](long d) { return d >= 0; });
    const std::size_t nonzero_cols = std::count_if(col_deg.begin(), col_deg.end(), [](long d) { return d >= 0; });
    const std::size_t full = std::min(nonzero_rows, nonzero_cols);
    std::size_t best = 0;
    for (long k = 0;; ++k) {
        if (best == full || k > minor_degree(best + 1))
            return best;
        const Scalar s0(Rational(k % 2 ? (k + 1) / 2 : -k / 2));
        ScalarMatrix v(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!p(i, j).is_zero())
                    v(i, j) = p(i, j).eval(s0);
        best = std::max(best, rank(v));
    }
}

template <class F> struct RowEchelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

/// Reduced row echelon form over a field.
template <class F> RowEchelon<F> rref(Matrix<F> m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && is_zero(m(p, c)))
            ++p;
        if (p == R)
            continue;
        m.swap_rows(r, p);
        F inv = F(1) / m(r, c);
        for (std::size_t j = c; j < C; ++j)
            if (!is_zero(m(r, j)))
                m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || is_zero(m(i, c)))
                continue;
            F f = m(i, c);
            for (std::size_t j = c; j < C; ++j)
                if (!is_zero(m(r, j)))
                    m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(piv)};
}

/// Rank over Q by sparse-aware elimination (the constraint systems built
/// from realified operators are large and mostly zero).
inline std::size_t rank(const RationalMatrix &m) { return rref(m).pivots.size(); }

/// Basis of {x : m x = 0}, one vector per free column, in column order.
template <class F> std::vector<std::vector<F>> nullspace(const Matrix<F> &m) {
    auto [red, piv] = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_piv(C, false);
    for (auto c : piv)
        is_piv[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_piv[f])
            continue;
        std::vector<F> v(C, F(0));
        v[f] = F(1);
        for (std::size_t k = 0; k < piv.size(); ++k)
            v[piv[k]] = -red(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Inverse over a field; nullopt when singular.
template <class F> std::optional<Matrix<F>> try_inverse(const Matrix<F> &m) {
    require(m.is_square(), "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix<F> aug(n, 2 * n, F(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = F(1);
    }
    auto [red, piv] = rref(std::move(aug));
    if (piv.size() < n || piv[n - 1] != n - 1)
        return std::nullopt;
    Matrix<F> inv(n, n, F(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = red(i, n + j);
    return inv;
}

template <class F> Matrix<F> inverse(const Matrix<F> &m) {
    auto inv = try_inverse(m);
    if (!inv)
        throw PreconditionError("matrix is singular");
    return *inv;
}

/// Determinant over a commutative ring by Laplace expansion along rows with
/// memoization on column subsets (O(n 2^n) ring operations).
template <class T> T det_expansion(const Matrix<T> &m, const T &one) {
    require(m.is_square(), "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    require(n < 63, "matrix too large for subset expansion");
    if (n == 0)
        return one;
    std::vector<std::size_t> rows(n), cols(n);
    for (std::size_t k = 0; k < n; ++k)
        rows[k] = cols[k] = k;
    std::unordered_map<std::uint64_t, T> memo;
    std::function<T(std::size_t, std::uint64_t)> rec = [&](std::size_t k, std::uint64_t mask) -> T {
        // det of rows[0..k) x columns in mask (popcount == k)
        if (k == 0)
            return one;
        if (auto it = memo.find(mask); it != memo.end())
            return it->second;
        T acc = one - one;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask >> j & 1))
                continue;
            const T &e = m(rows[k - 1], cols[j]);
            // cofactor sign along the bottom row: parity of the columns to the right of j
            int after = __builtin_popcountll(mask >> (j + 1));
            if (!is_zero(e)) {
                T sub = rec(k - 1, mask & ~(std::uint64_t(1) << j));
                if (!is_zero(sub)) {
                    if (after % 2 == 0)
                        acc += e * sub;
                    else
                        acc -= e * sub;
                }
            }
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(n, (std::uint64_t(1) << n) - 1);
}

/// Determinant over a field by Gaussian elimination.
template <class F> F det_field(Matrix<F> m) {
    require(m.is_square(), "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    F d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m(p, c)))
            ++p;
        if (p == n)
            return F(0);
        if (p != c) {
            m.swap_rows(p, c);
            d = -d;
        }
        d = d * m(c, c);
        F inv = F(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c)))
                continue;
            F f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

namespace detail {
inline void k_subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t> &cur,
                      std::vector<std::vector<std::size_t>> &out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        k_subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}
} // namespace detail

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    detail::k_subsets(n, k, 0, cur, out);
    return out;
}

/// All k x k minors, ordered lexicographically by (row set, column set).
template <class T> std::vector<T> minors(const Matrix<T> &m, std::size_t k, const T &one) {
    require(k >= 1 && k <= std::min(m.rows(), m.cols()), "minor size out of range");
    std::vector<T> out;
    auto rsets = k_subsets(m.rows(), k);
    auto csets = k_subsets(m.cols(), k);
    out.reserve(rsets.size() * csets.size());
    for (const auto &rs : rsets)
        for (const auto &cs : csets)
            out.push_back(det_expansion(m.select(rs, cs), one));
    return out;
}

inline std::vector<LaurentPoly> minors(const LaurentMatrix &m, std::size_t k) {
    require(m.rows() > 0 && m.cols() > 0, "minors of an empty matrix");
    const std::size_t a = m(0, 0).nvars();
    return minors(m, k, LaurentPoly::constant(a, Scalar(1)));
}

/// Evaluates every entry at the character rho.
inline ScalarMatrix eval_character(const LaurentMatrix &m, std::span<const Scalar> rho) {
    ScalarMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = m(i, j).eval(rho);
    return r;
}

inline Scalar eval_character(const LaurentPoly &p, std::span<const Scalar> rho) { return p.eval(rho); }

} // namespace nahodge

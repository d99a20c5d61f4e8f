#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "nahodge/errors.hpp"
#include "nahodge/laurent.hpp"
#include "nahodge/matrix.hpp"
#include "nahodge/ratfun.hpp"
#include "nahodge/scalar.hpp"

namespace nahodge {

/// Matrix of Laurent polynomials in z over the coefficient field F.
template <class F> using ZMatrix = Matrix<Laurent1<F>>;

template <class F> Laurent1<F> z_one() { return Laurent1<F>(F(1)); }
template <class F> Laurent1<F> z_power(int e) { return Laurent1<F>::monomial(e, F(1)); }

template <class F> Laurent1<F> determinant(const ZMatrix<F> &m) { return det_expansion(m, z_one<F>()); }

template <class F> ZMatrix<F> adjugate(const ZMatrix<F> &m) {
    require(m.is_square(), "adjugate of a non-square matrix");
    const std::size_t n = m.rows();
    ZMatrix<F> adj(n, n);
    if (n == 1) {
        adj(0, 0) = z_one<F>();
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rs, cs;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != i)
                    rs.push_back(k);
                if (k != j)
                    cs.push_back(k);
            }
            Laurent1<F> minor = determinant(m.select(rs, cs));
            adj(j, i) = (i + j) % 2 ? -minor : minor;
        }
    return adj;
}

/// Inverse of a matrix whose determinant is a monomial c*z^d.
template <class F> ZMatrix<F> unit_inverse(const ZMatrix<F> &m) {
    Laurent1<F> d = determinant(m);
    require(d.is_monomial(), "matrix determinant is not a unit");
    const int e = d.min_exp();
    Laurent1<F> inv = Laurent1<F>::monomial(-e, F(1) / d.coeff(e));
    return inv * adjugate(m);
}

/// Largest / smallest z-exponent over the nonzero entries.
template <class F> std::optional<int> max_z_exp(const ZMatrix<F> &m) {
    std::optional<int> r;
    for (const auto &e : m.data())
        if (!e.is_zero())
            r = r ? std::max(*r, e.max_exp()) : e.max_exp();
    return r;
}
template <class F> std::optional<int> min_z_exp(const ZMatrix<F> &m) {
    std::optional<int> r;
    for (const auto &e : m.data())
        if (!e.is_zero())
            r = r ? std::min(*r, e.min_exp()) : e.min_exp();
    return r;
}

/// Diagonal matrix diag(z^{e_i}).
template <class F> ZMatrix<F> z_diagonal(const std::vector<int> &e) {
    ZMatrix<F> d(e.size(), e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        d(i, i) = z_power<F>(e[i]);
    return d;
}

/// G = A * D * C with A invertible over F[z^-1], C invertible over F[z] and
/// D = diag(z^{-a_i}) for the splitting exponents a_1 >= ... >= a_n.
template <class F> struct BirkhoffFactorization {
    ZMatrix<F> A, D, C;
    std::vector<int> exponents;
};

namespace detail {

/// Incremental row echelon basis used to pick complements.
template <class F> class EchelonBasis {
  public:
    explicit EchelonBasis(std::size_t len) : len_(len) {}
    /// Adds v if it is independent of the current span; reports whether it was.
    bool insert(std::vector<F> v) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const F &c = v[pivots_[r]];
            if (is_zero(c))
                continue;
            F f = c;
            for (std::size_t j = pivots_[r]; j < len_; ++j)
                if (!is_zero(rows_[r][j]))
                    v[j] -= f * rows_[r][j];
        }
        std::size_t p = 0;
        while (p < len_ && is_zero(v[p]))
            ++p;
        if (p == len_)
            return false;
        F inv = F(1) / v[p];
        for (std::size_t j = p; j < len_; ++j)
            if (!is_zero(v[j]))
                v[j] = v[j] * inv;
        // keep the stored rows fully reduced against the new pivot
        for (auto &row : rows_) {
            if (is_zero(row[p]))
                continue;
            F f = row[p];
            for (std::size_t j = p; j < len_; ++j)
                if (!is_zero(v[j]))
                    row[j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }
    std::size_t size() const { return rows_.size(); }

  private:
    std::size_t len_;
    std::vector<std::vector<F>> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace detail

/// Vector bundle on P^1: sections satisfy s_inf = G(z) s_0(z), so O(a) has the
/// 1x1 transition z^{-a}.
template <class F> class P1Bundle {
  public:
    explicit P1Bundle(ZMatrix<F> g) : g_(std::move(g)) {
        require(g_.is_square() && g_.rows() > 0, "transition matrix must be square and nonempty");
        Laurent1<F> d = determinant(g_);
        require(!d.is_zero() && d.is_monomial(), "transition determinant is not a unit");
        det_exp_ = d.min_exp();
        max_deg_ = *max_z_exp(g_);
        auto adj_max = max_z_exp(adjugate(g_));
        ensure(adj_max.has_value(), "adjugate of an invertible matrix vanished");
        max_deg_inv_ = *adj_max - det_exp_;
    }

    std::size_t rank() const { return g_.rows(); }
    const ZMatrix<F> &transition() const { return g_; }
    /// Exponent d in det G = c z^d.
    int det_exponent() const { return det_exp_; }
    /// Largest z-exponent in G and in G^{-1}.
    int max_degree() const { return max_deg_; }
    int max_degree_inverse() const { return max_deg_inv_; }

    /// dim H^0(B(m)).
    std::size_t h0_twist(int m) const {
        const int D = m + max_deg_inv_;
        if (D < 0)
            return 0;
        const std::size_t ncols = rank() * (D + 1);
        if (max_deg_ + D <= m)
            return ncols;
        return ncols - nahodge::rank(system(m));
    }

    /// Basis of H^0(B(m)) as polynomial vectors v(z) with deg_z(G v) <= m.
    std::vector<std::vector<Laurent1<F>>> section_basis(int m) const {
        const std::size_t n = rank();
        const int D = m + max_deg_inv_;
        std::vector<std::vector<Laurent1<F>>> out;
        for (const auto &coeffs : sections(m)) {
            std::vector<Laurent1<F>> v(n);
            for (std::size_t j = 0; j < n; ++j)
                for (int k = 0; k <= D; ++k)
                    v[j].add_term(k, coeffs[j * (D + 1) + k]);
            out.push_back(std::move(v));
        }
        return out;
    }

    /// Grothendieck exponents a_1 >= ... >= a_n, read off from h^0 increments.
    std::vector<int> splitting_type() const {
        const int lo = -max_deg_inv_ - 2, hi = max_deg_;
        std::size_t prev_h = h0_twist(lo);
        ensure(prev_h == 0, "h0 window does not start at zero");
        // delta(m) = #{a_i >= -m}; once it reaches the rank it stays there
        std::vector<int> type;
        std::size_t prev_delta = 0;
        for (int m = lo + 1; m <= hi && prev_delta < rank(); ++m) {
            const std::size_t hm = h0_twist(m);
            ensure(m > lo + 1 || hm == 0, "h0 window does not start at zero");
            std::size_t delta = hm - prev_h;
            prev_h = hm;
            ensure(delta >= prev_delta, "h0 increments are not monotone");
            for (std::size_t k = prev_delta; k < delta; ++k)
                type.push_back(-m);
            prev_delta = delta;
        }
        ensure(type.size() == rank(), "h0 increments did not stabilize at the rank");
        int sum = 0;
        for (int a : type)
            sum += a;
        ensure(sum == -det_exp_, "splitting exponents do not sum to the determinant degree");
        return type;
    }

    /// Constructive Birkhoff factorization; nullopt if the construction or a
    /// verification step fails.
    std::optional<BirkhoffFactorization<F>> factorization_certificate() const {
        const std::size_t n = rank();
        const std::vector<int> type = splitting_type();
        std::vector<int> distinct;
        for (int a : type)
            if (distinct.empty() || distinct.back() != a)
                distinct.push_back(a);

        std::vector<std::vector<Laurent1<F>>> cols; // chosen sections
        std::vector<int> col_exp;
        for (int a : distinct) {
            const int D = -a + max_deg_inv_;
            const std::size_t len = n * (D + 1);
            detail::EchelonBasis<F> span(len);
            auto flatten = [&](const std::vector<Laurent1<F>> &v) {
                std::vector<F> flat(len, F(0));
                for (std::size_t j = 0; j < n; ++j)
                    for (const auto &[e, c] : v[j].terms()) {
                        ensure(e >= 0 && e <= D, "section degree exceeds the probe bound");
                        flat[j * (D + 1) + e] = c;
                    }
                return flat;
            };
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (int k = 0; k <= col_exp[c] - a; ++k) {
                    std::vector<Laurent1<F>> shifted = cols[c];
                    for (auto &p : shifted)
                        p = p.shifted(k);
                    span.insert(flatten(shifted));
                }
            std::size_t want = std::count(type.begin(), type.end(), a);
            std::size_t got = 0;
            for (auto &v : section_basis(-a)) {
                if (got == want)
                    break;
                if (span.insert(flatten(v))) {
                    cols.push_back(v);
                    col_exp.push_back(a);
                    ++got;
                }
            }
            if (got != want)
                return std::nullopt;
        }

        ZMatrix<F> P(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                P(i, j) = cols[j][i];
        Laurent1<F> detP = determinant(P);
        if (!(detP.is_monomial() && detP.min_exp() == 0))
            return std::nullopt;

        std::vector<int> d_exp(n), a_exp(n);
        for (std::size_t i = 0; i < n; ++i) {
            d_exp[i] = -col_exp[i];
            a_exp[i] = col_exp[i];
        }
        BirkhoffFactorization<F> f;
        f.exponents = col_exp;
        f.D = z_diagonal<F>(d_exp);
        f.A = g_ * P * z_diagonal<F>(a_exp);
        f.C = unit_inverse(P);
        if (!verify(f))
            return std::nullopt;
        return f;
    }

    /// Checks the chart conditions and the product identity of a factorization.
    bool verify(const BirkhoffFactorization<F> &f) const {
        auto amax = max_z_exp(f.A);
        auto cmin = min_z_exp(f.C);
        if ((amax && *amax > 0) || (cmin && *cmin < 0))
            return false;
        Laurent1<F> dA = determinant(f.A), dC = determinant(f.C);
        if (!(dA.is_monomial() && dA.min_exp() == 0 && dC.is_monomial() && dC.min_exp() == 0))
            return false;
        return f.A * f.D * f.C == g_;
    }

  private:
    ZMatrix<F> g_;
    int det_exp_ = 0, max_deg_ = 0, max_deg_inv_ = 0;

    // Coefficient vectors (v_j[k] at index j*(D+1)+k) spanning H^0(B(m)).
    std::vector<std::vector<F>> sections(int m) const {
        const std::size_t n = rank();
        const int D = m + max_deg_inv_;
        if (D < 0)
            return {};
        const int top = max_deg_ + D;
        const std::size_t ncols = n * (D + 1);
        if (top <= m) {
            std::vector<std::vector<F>> all;
            for (std::size_t c = 0; c < ncols; ++c) {
                std::vector<F> e(ncols, F(0));
                e[c] = F(1);
                all.push_back(std::move(e));
            }
            return all;
        }
        return nullspace(system(m));
    }

    // Pole conditions: coefficients of z^E in G v vanish for m < E <= max_deg + D.
    Matrix<F> system(int m) const {
        const std::size_t n = rank();
        const int D = m + max_deg_inv_, top = max_deg_ + D;
        const std::size_t ncols = n * (D + 1);
        Matrix<F> sys(n * (top - m), ncols, F(0));
        for (std::size_t r = 0; r < n; ++r)
            for (int E = m + 1; E <= top; ++E) {
                std::size_t row = r * (top - m) + (E - m - 1);
                for (std::size_t j = 0; j < n; ++j)
                    for (const auto &[e, c] : g_(r, j).terms()) {
                        int k = E - e;
                        if (k >= 0 && k <= D)
                            sys(row, j * (D + 1) + k) = c;
                    }
            }
        return sys;
    }
};

template <class F> P1Bundle<F> make_bundle(ZMatrix<F> g) { return P1Bundle<F>(std::move(g)); }

} // namespace nahodge

#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nahodge/errors.hpp"
#include "nahodge/scalar.hpp"

namespace nahodge {

/// One-variable Laurent polynomial sum_e c_e x^e over a coefficient ring R.
/// No zero coefficients are stored.
namespace detail {
template <class R> bool coeff_is_zero(const R &c) { return is_zero(c); }

// Appends "coeff*mono" to a sum, folding unit coefficients and signs.
inline void append_term(std::string &s, std::string cs, const std::string &mono) {
    bool neg = false;
    const bool compound = cs.find_first_of("+-", 1) != std::string::npos || cs.find(")/(") != std::string::npos;
    if (!compound && !cs.empty() && cs[0] == '-') {
        neg = true;
        cs.erase(0, 1);
    } else if (compound) {
        cs = "(" + cs + ")";
    }
    std::string term;
    if (mono.empty())
        term = cs;
    else if (cs == "1")
        term = mono;
    else
        term = cs + "*" + mono;
    if (s.empty())
        s = (neg ? "-" : "") + term;
    else
        s += (neg ? " - " : " + ") + term;
}
} // namespace detail

template <class R> class Laurent1 {
  public:
    using Coeff = R;

    Laurent1() = default;
    Laurent1(int c) : Laurent1(R(c)) {}
    Laurent1(const R &c) {
        if (!is_zero_coeff(c))
            terms_.emplace(0, c);
    }

    static Laurent1 monomial(int e, const R &c) {
        Laurent1 p;
        if (!is_zero_coeff(c))
            p.terms_.emplace(e, c);
        return p;
    }
    static Laurent1 var(int e = 1) { return monomial(e, R(1)); }

    const std::map<int, R> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    int min_exp() const {
        ensure(!terms_.empty(), "min_exp of zero Laurent polynomial");
        return terms_.begin()->first;
    }
    int max_exp() const {
        ensure(!terms_.empty(), "max_exp of zero Laurent polynomial");
        return terms_.rbegin()->first;
    }
    R coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? R(0) : it->second;
    }
    R leading() const { return terms_.rbegin()->second; }

    void add_term(int e, const R &c) {
        if (is_zero_coeff(c))
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_coeff(it->second))
                terms_.erase(it);
        }
    }

    Laurent1 shifted(int k) const {
        Laurent1 r;
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(e + k, c);
        return r;
    }

    template <class F> auto map_coeffs(F f) const {
        using S = decltype(f(std::declval<R>()));
        Laurent1<S> r;
        for (const auto &[e, c] : terms_)
            r.add_term(e, f(c));
        return r;
    }

    Laurent1 operator-() const {
        Laurent1 r;
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(e, -c);
        return r;
    }
    Laurent1 &operator+=(const Laurent1 &o) {
        for (const auto &[e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    Laurent1 &operator-=(const Laurent1 &o) {
        for (const auto &[e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    friend Laurent1 operator+(Laurent1 a, const Laurent1 &b) { return a += b; }
    friend Laurent1 operator-(Laurent1 a, const Laurent1 &b) { return a -= b; }
    friend Laurent1 operator*(const Laurent1 &a, const Laurent1 &b) {
        Laurent1 r;
        for (const auto &[ea, ca] : a.terms_)
            for (const auto &[eb, cb] : b.terms_)
                r.add_term(ea + eb, ca * cb);
        return r;
    }
    Laurent1 &operator*=(const Laurent1 &o) { return *this = *this * o; }
    friend Laurent1 operator*(const R &s, const Laurent1 &p) {
        Laurent1 r;
        if (is_zero_coeff(s))
            return r;
        for (const auto &[e, c] : p.terms_)
            r.add_term(e, s * c);
        return r;
    }
    friend bool operator==(const Laurent1 &a, const Laurent1 &b) {
        if (a.terms_.size() != b.terms_.size())
            return false;
        auto ia = a.terms_.begin();
        for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second))
                return false;
        return true;
    }
    friend bool operator!=(const Laurent1 &a, const Laurent1 &b) { return !(a == b); }

    /// Evaluation at x (x must be invertible when negative exponents occur).
    R eval(const R &x) const {
        R r(0);
        for (const auto &[e, c] : terms_)
            r += c * power(x, e);
        return r;
    }

    std::string to_string(const std::string &v = "z") const {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto &[e, c] : terms_) {
            std::string mono = e == 0 ? "" : v + (e == 1 ? "" : "^" + std::to_string(e));
            detail::append_term(s, coeff_string(c), mono);
        }
        return s;
    }

  private:
    std::map<int, R> terms_;

    static bool is_zero_coeff(const R &c) { return detail::coeff_is_zero(c); }
    static R power(const R &x, int e) {
        if (e < 0)
            return power(R(1) / x, -e);
        R r(1), b = x;
        while (e > 0) {
            if (e & 1)
                r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    template <class T> static std::string coeff_string(const T &c) {
        if constexpr (requires { c.to_string(); })
            return c.to_string();
        else
            return nahodge::to_string(c);
    }
};

template <class R> bool is_zero(const Laurent1<R> &p) { return p.is_zero(); }

/// Exact quotient a / b of Laurent polynomials over a field; throws
/// InvariantError when b does not divide a.
template <class R> Laurent1<R> exact_quotient(Laurent1<R> a, const Laurent1<R> &b) {
    if (b.is_zero())
        throw InvariantError("exact division by zero polynomial");
    Laurent1<R> q;
    if (a.is_zero())
        return q;
    const int bmax = b.max_exp(), bmin = b.min_exp();
    const R blead = b.leading();
    while (!a.is_zero()) {
        if (a.max_exp() - bmax < a.min_exp() - bmin)
            throw InvariantError("inexact Laurent polynomial division");
        int e = a.max_exp() - bmax;
        R c = a.leading() / blead;
        q.add_term(e, c);
        a -= Laurent1<R>::monomial(e, c) * b;
    }
    return q;
}

/// Division with remainder for ordinary polynomials (all exponents >= 0) over
/// a field.
template <class R> std::pair<Laurent1<R>, Laurent1<R>> poly_divmod(Laurent1<R> a, const Laurent1<R> &b) {
    if (b.is_zero())
        throw InvariantError("polynomial division by zero");
    Laurent1<R> q;
    const int bdeg = b.max_exp();
    const R blead = b.leading();
    while (!a.is_zero() && a.max_exp() >= bdeg) {
        int e = a.max_exp() - bdeg;
        R c = a.leading() / blead;
        q.add_term(e, c);
        a -= Laurent1<R>::monomial(e, c) * b;
    }
    return {q, a};
}

/// Monic gcd of ordinary polynomials over a field.
template <class R> Laurent1<R> poly_gcd(Laurent1<R> a, Laurent1<R> b) {
    while (!b.is_zero()) {
        auto r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero())
        return a;
    return (R(1) / a.leading()) * a;
}

/// Multivariate Laurent polynomial over Scalar: the group algebra of Z^a with
/// generators t_1..t_a. Terms are kept in lexicographic exponent order.
class LaurentPoly {
  public:
    using Exponent = std::vector<int>;

    explicit LaurentPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static LaurentPoly constant(std::size_t nvars, const Scalar &c) {
        return monomial(Exponent(nvars, 0), c);
    }
    static LaurentPoly monomial(Exponent e, const Scalar &c) {
        LaurentPoly p(e.size());
        if (!c.is_zero())
            p.terms_.emplace(std::move(e), c);
        return p;
    }
    /// t_j^power
    static LaurentPoly variable(std::size_t nvars, std::size_t j, int power = 1) {
        require(j < nvars, "variable index out of range");
        Exponent e(nvars, 0);
        e[j] = power;
        return monomial(std::move(e), Scalar(1));
    }

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, Scalar> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Units of the group algebra are exactly the nonzero monomials.
    bool is_unit() const { return terms_.size() == 1; }

    void add_term(const Exponent &e, const Scalar &c) {
        require(e.size() == nvars_, "exponent length does not match the number of variables");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    LaurentPoly operator-() const {
        LaurentPoly r(nvars_);
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(e, -c);
        return r;
    }
    LaurentPoly &operator+=(const LaurentPoly &o) {
        check_same(o);
        for (const auto &[e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    LaurentPoly &operator-=(const LaurentPoly &o) { return *this += -o; }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b) {
        a.check_same(b);
        LaurentPoly r(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto &[ea, ca] : a.terms_)
            for (const auto &[eb, cb] : b.terms_) {
                for (std::size_t k = 0; k < e.size(); ++k)
                    e[k] = ea[k] + eb[k];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    LaurentPoly &operator*=(const LaurentPoly &o) { return *this = *this * o; }
    friend LaurentPoly operator*(const Scalar &s, const LaurentPoly &p) {
        LaurentPoly r(p.nvars_);
        if (s.is_zero())
            return r;
        for (const auto &[e, c] : p.terms_)
            r.terms_.emplace(e, s * c);
        return r;
    }
    friend bool operator==(const LaurentPoly &a, const LaurentPoly &b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly &a, const LaurentPoly &b) { return !(a == b); }

    /// Evaluation at the character t_j -> rho_j.
    Scalar eval(std::span<const Scalar> rho) const {
        require(rho.size() == nvars_, "character has the wrong number of components");
        for (const auto &r : rho)
            require(!r.is_zero(), "character components must be nonzero");
        Scalar sum(0);
        for (const auto &[e, c] : terms_) {
            Scalar term = c;
            for (std::size_t k = 0; k < nvars_; ++k)
                if (e[k] != 0)
                    term *= rho[k].pow(e[k]);
            sum += term;
        }
        return sum;
    }

    /// Substitutes t_j -> zeta_j * prod_k s_k^{E[j][k]}, giving a Laurent
    /// polynomial in the b = E[j].size() variables s_k.
    LaurentPoly substitute_monomial(std::span<const Scalar> zeta, const std::vector<std::vector<int>> &E,
                                    std::size_t b) const {
        require(zeta.size() == nvars_ && E.size() == nvars_, "substitution data has the wrong length");
        for (const auto &row : E)
            require(row.size() == b, "exponent matrix row has the wrong length");
        for (const auto &z : zeta)
            require(!z.is_zero(), "translation components must be invertible");
        LaurentPoly r(b);
        Exponent se(b);
        for (const auto &[e, c] : terms_) {
            Scalar coeff = c;
            std::fill(se.begin(), se.end(), 0);
            for (std::size_t j = 0; j < nvars_; ++j) {
                if (e[j] == 0)
                    continue;
                coeff *= zeta[j].pow(e[j]);
                for (std::size_t k = 0; k < b; ++k)
                    se[k] += e[j] * E[j][k];
            }
            r.add_term(se, coeff);
        }
        return r;
    }

    /// Every coefficient is an integer (the polynomial lies in Z[t^{+-1}]).
    bool has_integer_coefficients() const {
        for (const auto &[e, c] : terms_)
            if (!c.is_rational() || c.rational_value().get_den() != 1)
                return false;
        return true;
    }

    std::string to_string() const {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto &[e, c] : terms_) {
            std::string mono;
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0)
                    mono += (mono.empty() ? "t" : "*t") + std::to_string(k + 1) +
                            (e[k] == 1 ? "" : "^" + std::to_string(e[k]));
            detail::append_term(s, c.to_string(), mono);
        }
        return s;
    }

  private:
    std::size_t nvars_;
    std::map<Exponent, Scalar> terms_;

    void check_same(const LaurentPoly &o) const {
        require(nvars_ == o.nvars_, "Laurent polynomials in different numbers of variables");
    }
};

inline bool is_zero(const LaurentPoly &p) { return p.is_zero(); }

} // namespace nahodge

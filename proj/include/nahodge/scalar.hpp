#pragma once

#include <cstdlib>
#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nahodge/errors.hpp"
#include "nahodge/rational.hpp"

namespace nahodge {

namespace cyclo {

using QPoly = std::vector<Rational>; // ascending coefficients

inline void trim(QPoly &p) {
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
}

namespace detail {

inline std::vector<Integer> divide_monic(std::vector<Integer> p, const std::vector<Integer> &q) {
    std::vector<Integer> quot(p.size() - q.size() + 1, 0);
    for (int k = static_cast<int>(p.size()) - 1; k >= static_cast<int>(q.size()) - 1; --k) {
        Integer c = p[k];
        int shift = k - static_cast<int>(q.size()) + 1;
        quot[shift] = c;
        for (std::size_t j = 0; j < q.size(); ++j)
            p[shift + j] -= c * q[j];
    }
    return quot;
}

inline const std::vector<Integer> &phi_poly_locked(int n, std::map<int, std::vector<Integer>> &cache) {
    if (auto it = cache.find(n); it != cache.end())
        return it->second;
    // x^n - 1 divided by Phi_d for every proper divisor d
    std::vector<Integer> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0)
            p = divide_monic(std::move(p), phi_poly_locked(d, cache));
    return cache[n] = std::move(p);
}

} // namespace detail

/// Integer coefficients of the n-th cyclotomic polynomial (ascending). The
/// cache only grows; entries never change once inserted.
inline const std::vector<Integer> &phi_poly(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Integer>> cache;
    require(n >= 1, "cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(mu);
    return detail::phi_poly_locked(n, cache);
}

inline int totient(int n) { return static_cast<int>(phi_poly(n).size()) - 1; }

/// Reduces p modulo the (monic) n-th cyclotomic polynomial, returning exactly
/// totient(n) coefficients.
inline QPoly reduce(QPoly p, int n) {
    const auto &f = phi_poly(n);
    const int deg = static_cast<int>(f.size()) - 1;
    for (int k = static_cast<int>(p.size()) - 1; k >= deg; --k) {
        if (sgn(p[k]) == 0)
            continue;
        Rational c = p[k];
        for (int j = 0; j <= deg; ++j)
            p[k - deg + j] -= c * Rational(f[j]);
    }
    p.resize(deg, Rational(0));
    return p;
}

inline QPoly mul(const QPoly &a, const QPoly &b) {
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

/// (q, r) with a = q*b + r over Q.
inline std::pair<QPoly, QPoly> divmod(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    if (b.empty())
        throw InvariantError("polynomial division by zero");
    if (a.size() < b.size())
        return {QPoly{}, a};
    QPoly q(a.size() - b.size() + 1, Rational(0));
    for (int k = static_cast<int>(a.size()) - 1; k >= static_cast<int>(b.size()) - 1; --k) {
        Rational c = a[k] / b.back();
        int shift = k - static_cast<int>(b.size()) + 1;
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] -= c * b[j];
    }
    trim(a);
    return {q, a};
}

/// Inverse of a modulo Phi_n by the extended Euclidean algorithm.
inline QPoly inverse(const QPoly &a, int n) {
    const auto &fi = phi_poly(n);
    QPoly f(fi.begin(), fi.end());
    QPoly r0 = f, r1 = a;
    trim(r1);
    if (r1.empty())
        throw PreconditionError("division by zero");
    QPoly s0{}, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        QPoly qs = mul(q, s1);
        QPoly s2 = s0;
        if (s2.size() < qs.size())
            s2.resize(qs.size(), Rational(0));
        for (std::size_t k = 0; k < qs.size(); ++k)
            s2[k] -= qs[k];
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is the gcd, a nonzero constant because Phi_n is irreducible.
    ensure(r0.size() == 1, "cyclotomic element not invertible");
    for (auto &c : s0)
        c /= r0[0];
    return reduce(s0, n);
}

} // namespace cyclo

/// Exact scalar: an element of Q(i) or of a cyclotomic field Q(zeta_n).
///
/// Values of cyclotomic order 1, 2 and 4 are stored in Gaussian form, so a
/// Gaussian rational and its order-4 cyclotomic image compare equal. Mixing
/// two different cyclotomic orders is rejected unless one side is rational.
class Scalar {
  public:
    struct Gaussian {
        Rational re, im;
    };
    struct Cyclotomic {
        int order;
        std::vector<Rational> c; // basis 1, zeta, ..., zeta^{phi(n)-1}
    };

    Scalar() : v_(Gaussian{Rational(0), Rational(0)}) {}
    Scalar(int x) : v_(Gaussian{Rational(x), Rational(0)}) {}
    Scalar(long x) : v_(Gaussian{Rational(x), Rational(0)}) {}
    Scalar(const Rational &re) : v_(Gaussian{re, Rational(0)}) {}
    Scalar(const Rational &re, const Rational &im) : v_(Gaussian{re, im}) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    static Scalar cyclotomic(int order, std::vector<Rational> coeffs) {
        require(order >= 1, "cyclotomic order must be positive");
        const int phi = cyclo::totient(order);
        require(static_cast<int>(coeffs.size()) <= phi,
                "too many coefficients for cyclotomic order " + std::to_string(order));
        coeffs.resize(phi, Rational(0));
        return canonical(Cyclotomic{order, std::move(coeffs)});
    }

    /// zeta_n^k for the primitive root zeta_n = exp(2 pi i / n).
    static Scalar root_of_unity(int order, int k = 1) {
        require(order >= 1, "root of unity order must be positive");
        k = ((k % order) + order) % order;
        cyclo::QPoly p(k + 1, Rational(0));
        p[k] = 1;
        return canonical(Cyclotomic{order, cyclo::reduce(std::move(p), order)});
    }

    bool is_gaussian() const { return std::holds_alternative<Gaussian>(v_); }
    /// 0 for Gaussian values, n for Q(zeta_n) values.
    int order() const { return is_gaussian() ? 0 : std::get<Cyclotomic>(v_).order; }
    const Gaussian &gaussian() const {
        if (!is_gaussian())
            throw PreconditionError("expected a Gaussian rational scalar");
        return std::get<Gaussian>(v_);
    }
    const Cyclotomic &cyclotomic_data() const { return std::get<Cyclotomic>(v_); }
    const Rational &re() const { return gaussian().re; }
    const Rational &im() const { return gaussian().im; }

    bool is_zero() const {
        if (auto g = std::get_if<Gaussian>(&v_))
            return sgn(g->re) == 0 && sgn(g->im) == 0;
        for (const auto &c : std::get<Cyclotomic>(v_).c)
            if (sgn(c) != 0)
                return false;
        return true;
    }
    bool is_rational() const {
        if (auto g = std::get_if<Gaussian>(&v_))
            return sgn(g->im) == 0;
        const auto &c = std::get<Cyclotomic>(v_).c;
        for (std::size_t k = 1; k < c.size(); ++k)
            if (sgn(c[k]) != 0)
                return false;
        return true;
    }
    Rational rational_value() const {
        require(is_rational(), "scalar is not rational");
        if (auto g = std::get_if<Gaussian>(&v_))
            return g->re;
        return std::get<Cyclotomic>(v_).c[0];
    }
    bool is_one() const { return is_rational() && rational_value() == 1; }

    Scalar conj() const {
        if (auto g = std::get_if<Gaussian>(&v_))
            return Scalar(g->re, -g->im);
        const auto &cy = std::get<Cyclotomic>(v_);
        const int n = cy.order;
        cyclo::QPoly p(n + 1, Rational(0));
        for (std::size_t k = 0; k < cy.c.size(); ++k)
            p[k == 0 ? 0 : n - k] += cy.c[k];
        return canonical(Cyclotomic{n, cyclo::reduce(std::move(p), n)});
    }

    Scalar inverse() const {
        if (is_zero())
            throw PreconditionError("division by zero");
        if (auto g = std::get_if<Gaussian>(&v_)) {
            Rational nrm = g->re * g->re + g->im * g->im;
            return Scalar(Rational(g->re / nrm), Rational(-g->im / nrm));
        }
        const auto &cy = std::get<Cyclotomic>(v_);
        return canonical(Cyclotomic{cy.order, cyclo::inverse(cy.c, cy.order)});
    }

    Scalar pow(long k) const {
        if (k < 0)
            return inverse().pow(-k);
        Scalar result(1), base = *this;
        while (k > 0) {
            if (k & 1)
                result *= base;
            base *= base;
            k >>= 1;
        }
        return result;
    }

    Scalar operator-() const {
        if (auto g = std::get_if<Gaussian>(&v_))
            return Scalar(Rational(-g->re), Rational(-g->im));
        auto cy = std::get<Cyclotomic>(v_);
        for (auto &c : cy.c)
            c = -c;
        return Scalar(std::move(cy));
    }

    Scalar &operator+=(const Scalar &o) {
        if (auto a = std::get_if<Gaussian>(&v_)) {
            if (auto b = std::get_if<Gaussian>(&o.v_)) {
                a->re += b->re;
                a->im += b->im;
                return *this;
            }
        }
        auto [x, y] = promote(*this, o);
        for (std::size_t k = 0; k < x.c.size(); ++k)
            x.c[k] += y.c[k];
        *this = canonical(std::move(x));
        return *this;
    }
    Scalar &operator-=(const Scalar &o) { return *this += -o; }
    Scalar &operator*=(const Scalar &o) {
        if (auto a = std::get_if<Gaussian>(&v_)) {
            if (auto b = std::get_if<Gaussian>(&o.v_)) {
                if (sgn(a->im) == 0 && sgn(b->im) == 0) {
                    a->re *= b->re;
                    return *this;
                }
                Rational re = a->re * b->re - a->im * b->im;
                Rational im = a->re * b->im + a->im * b->re;
                a->re = std::move(re);
                a->im = std::move(im);
                return *this;
            }
        }
        auto [x, y] = promote(*this, o);
        *this = canonical(Cyclotomic{x.order, cyclo::reduce(cyclo::mul(x.c, y.c), x.order)});
        return *this;
    }
    Scalar &operator/=(const Scalar &o) {
        if (auto b = std::get_if<Gaussian>(&o.v_); b && sgn(b->im) == 0) {
            if (sgn(b->re) == 0)
                throw PreconditionError("division by zero");
            if (auto a = std::get_if<Gaussian>(&v_)) {
                a->re /= b->re;
                a->im /= b->re;
                return *this;
            }
        }
        return *this *= o.inverse();
    }

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }

    friend bool operator==(const Scalar &a, const Scalar &b) {
        auto ga = std::get_if<Gaussian>(&a.v_);
        auto gb = std::get_if<Gaussian>(&b.v_);
        if (ga && gb)
            return ga->re == gb->re && ga->im == gb->im;
        if (a.is_rational() && b.is_rational())
            return a.rational_value() == b.rational_value();
        if (ga && sgn(ga->im) != 0 && b.order() % 4 != 0)
            return false; // i is not in Q(zeta_n) for 4 not dividing n
        if (gb && sgn(gb->im) != 0 && a.order() % 4 != 0)
            return false;
        if (!ga && !gb && a.order() != b.order())
            return false; // non-rational values of distinct declared orders
        auto [x, y] = promote(a, b);
        return x.c == y.c;
    }
    friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

    /// "a/b+c/d*i" for Gaussian values (zero parts omitted, "0" for zero);
    /// "[c0,c1,...]@zeta_n" for cyclotomic values.
    std::string to_string() const {
        if (auto g = std::get_if<Gaussian>(&v_)) {
            if (sgn(g->im) == 0)
                return g->re.get_str();
            std::string im = g->im.get_str() + "*i";
            if (sgn(g->re) == 0)
                return im;
            return g->re.get_str() + (sgn(g->im) > 0 ? "+" : "") + im;
        }
        const auto &cy = std::get<Cyclotomic>(v_);
        std::string s = "[";
        for (std::size_t k = 0; k < cy.c.size(); ++k)
            s += (k ? "," : "") + cy.c[k].get_str();
        return s + "]@zeta_" + std::to_string(cy.order);
    }

    /// Parses the Gaussian text form: "a", "a+b*i", "a-i", "b*i", "i", ...
    static Scalar parse(std::string_view text) {
        std::string s;
        for (char c : text)
            if (c != ' ')
                s.push_back(c);
        require(!s.empty(), "empty scalar literal");
        // split into signed terms at '+'/'-' that are not leading
        std::vector<std::string> terms;
        std::size_t start = 0;
        for (std::size_t k = 1; k < s.size(); ++k)
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '*') {
                terms.push_back(s.substr(start, k - start));
                start = k;
            }
        terms.push_back(s.substr(start));
        require(terms.size() <= 2, "bad scalar literal '" + s + "'");
        Rational re(0), im(0);
        bool seen_re = false, seen_im = false;
        for (auto t : terms) {
            if (!t.empty() && t.back() == 'i') {
                require(!seen_im, "bad scalar literal '" + s + "'");
                seen_im = true;
                t.pop_back();
                if (!t.empty() && t.back() == '*')
                    t.pop_back();
                if (t.empty() || t == "+")
                    im = 1;
                else if (t == "-")
                    im = -1;
                else
                    im = parse_rational(t);
            } else {
                require(!seen_re, "bad scalar literal '" + s + "'");
                seen_re = true;
                re = parse_rational(t);
            }
        }
        return Scalar(re, im);
    }

    friend std::ostream &operator<<(std::ostream &os, const Scalar &s) { return os << s.to_string(); }

  private:
    explicit Scalar(Cyclotomic c) : v_(std::move(c)) {}

    std::variant<Gaussian, Cyclotomic> v_;

    static Scalar canonical(Cyclotomic c) {
        if (std::all_of(c.c.begin() + std::min<std::size_t>(1, c.c.size()), c.c.end(),
                        [](const Rational &q) { return sgn(q) == 0; }))
            return Scalar(c.c.empty() ? Rational(0) : c.c[0]);
        if (c.order == 1 || c.order == 2)
            return Scalar(c.c[0]);
        if (c.order == 4)
            return Scalar(c.c[0], c.c[1]);
        return Scalar(std::move(c));
    }

    static Cyclotomic as_order(const Scalar &s, int n) {
        if (auto g = std::get_if<Gaussian>(&s.v_)) {
            cyclo::QPoly p{g->re};
            if (sgn(g->im) != 0) {
                require(n % 4 == 0, "Gaussian scalar with nonzero imaginary part cannot be embedded in Q(zeta_" +
                                        std::to_string(n) + ")");
                p.resize(n / 4 + 1, Rational(0));
                p[n / 4] += g->im;
            }
            return Cyclotomic{n, cyclo::reduce(std::move(p), n)};
        }
        const auto &cy = std::get<Cyclotomic>(s.v_);
        if (cy.order == n)
            return cy;
        require(s.is_rational(), "mixed cyclotomic orders " + std::to_string(cy.order) + " and " +
                                     std::to_string(n) + " are not combined");
        return Cyclotomic{n, cyclo::reduce(cyclo::QPoly{cy.c[0]}, n)};
    }

    static std::pair<Cyclotomic, Cyclotomic> promote(const Scalar &a, const Scalar &b) {
        int n = 4;
        if (!a.is_gaussian() && !b.is_gaussian()) {
            n = a.order();
            if (a.order() != b.order() && a.is_rational())
                n = b.order();
        } else if (!a.is_gaussian()) {
            n = a.order();
        } else if (!b.is_gaussian()) {
            n = b.order();
        }
        return {as_order(a, n), as_order(b, n)};
    }
};

inline bool is_zero(const Scalar &s) { return s.is_zero(); }
inline Scalar conj(const Scalar &s) { return s.conj(); }

/// Maximum cyclotomic order accepted from external input (CLI/JSON). Read from
/// NAHODGE_MAX_CYCLOTOMIC_ORDER, default 1000.
inline int max_cyclotomic_order() {
    if (const char *env = std::getenv("NAHODGE_MAX_CYCLOTOMIC_ORDER")) {
        int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    return 1000;
}

} // namespace nahodge

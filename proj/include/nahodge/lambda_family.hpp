#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nahodge/errors.hpp"
#include "nahodge/laurent.hpp"
#include "nahodge/scalar.hpp"

namespace nahodge {

using ScalarVector = std::vector<Scalar>;

inline ScalarVector conj(const ScalarVector &v) {
    ScalarVector r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        r[k] = v[k].conj();
    return r;
}

namespace detail {
inline ScalarVector axpy(const ScalarVector &x, const Scalar &a, const ScalarVector &y) {
    ScalarVector r = x;
    for (std::size_t k = 0; k < r.size(); ++k)
        r[k] += a * y[k];
    return r;
}
inline ScalarVector scaled(const Scalar &a, ScalarVector v) {
    for (auto &c : v)
        c = a * c;
    return v;
}
} // namespace detail

/// Rank-one harmonic data in linear coordinates: unitary part nu and Higgs
/// part theta' (theta'' = conj(theta')).
struct HarmonicLine {
    ScalarVector nu, theta;

    HarmonicLine(ScalarVector nu_, ScalarVector theta_) : nu(std::move(nu_)), theta(std::move(theta_)) {
        require(!nu.empty(), "genus must be positive");
        require(nu.size() == theta.size(), "nu and theta' must have the same length");
    }
    std::size_t genus() const { return nu.size(); }
    /// Flat-connection coordinates: ((0,1)-part, (1,0)-part).
    std::pair<ScalarVector, ScalarVector> flat_coordinates() const {
        return {detail::axpy(nu, Scalar(1), conj(theta)), detail::axpy(theta, Scalar(-1), conj(nu))};
    }
    friend bool operator==(const HarmonicLine &a, const HarmonicLine &b) { return a.nu == b.nu && a.theta == b.theta; }
};

/// Rank-one lambda-connection data (beta: (0,1)-operator, eta: (1,0)-operator).
struct HodPoint {
    ScalarVector beta, eta;
    Scalar lambda;
    friend bool operator==(const HodPoint &a, const HodPoint &b) {
        return a.beta == b.beta && a.eta == b.eta && a.lambda == b.lambda;
    }
};

inline HodPoint prefered_section(const HarmonicLine &h, const Scalar &lambda) {
    return {detail::axpy(h.nu, lambda, conj(h.theta)), detail::axpy(h.theta, -lambda, conj(h.nu)), lambda};
}

/// Deligne's involution over lambda -> -1/conj(lambda).
inline HodPoint sigma_prime(const HodPoint &p) {
    require(p.beta.size() == p.eta.size(), "beta and eta must have the same length");
    require(!p.lambda.is_zero(), "sigma' is undefined at lambda = 0");
    const Scalar inv = p.lambda.conj().inverse();
    return {detail::scaled(-inv, conj(p.eta)), detail::scaled(inv, conj(p.beta)), -inv};
}

inline HodPoint gm_act(const Scalar &t, const HodPoint &p) {
    require(!t.is_zero(), "the multiplicative group has no zero element");
    return {p.beta, detail::scaled(t, p.eta), t * p.lambda};
}

/// Polynomial section lambda -> (beta(lambda), eta(lambda)), one polynomial per coordinate.
struct PolySection {
    std::vector<Laurent1<Scalar>> beta, eta;

    std::size_t genus() const { return beta.size(); }
    int degree() const {
        int d = 0;
        for (const auto *v : {&beta, &eta})
            for (const auto &p : *v)
                if (!p.is_zero()) {
                    require(p.min_exp() >= 0, "section coordinates must be polynomials in lambda");
                    d = std::max(d, p.max_exp());
                }
        return d;
    }
    HodPoint at(const Scalar &lambda) const {
        HodPoint r{{}, {}, lambda};
        for (const auto &p : beta)
            r.beta.push_back(p.eval(lambda));
        for (const auto &p : eta)
            r.eta.push_back(p.eval(lambda));
        return r;
    }
    static PolySection of(const HarmonicLine &h) {
        PolySection s;
        for (std::size_t k = 0; k < h.genus(); ++k) {
            Laurent1<Scalar> b(h.nu[k]), e(h.theta[k]);
            b.add_term(1, h.theta[k].conj());
            e.add_term(1, -h.nu[k].conj());
            s.beta.push_back(b);
            s.eta.push_back(e);
        }
        return s;
    }
};

namespace detail {
// p(lambda) conjugated and rewritten in w = conj(lambda): sum conj(c_k) w^k.
inline Laurent1<Scalar> conj_in_w(const Laurent1<Scalar> &p) {
    return p.map_coeffs([](const Scalar &c) { return c.conj(); });
}
// p(-1/w) as a Laurent polynomial in w.
inline Laurent1<Scalar> antipodal_pullback(const Laurent1<Scalar> &p) {
    Laurent1<Scalar> r;
    for (const auto &[k, c] : p.terms())
        r.add_term(-k, k % 2 ? -c : c);
    return r;
}
} // namespace detail

/// Coordinates where sigma'(s(lambda)) and s(-1/conj(lambda)) differ, as
/// Laurent polynomials in w = conj(lambda); empty iff s is sigma'-equivariant.
inline std::vector<Laurent1<Scalar>> sigma_defect(const PolySection &s) {
    require(s.beta.size() == s.eta.size() && !s.beta.empty(), "malformed section");
    const Laurent1<Scalar> winv = Laurent1<Scalar>::monomial(-1, Scalar(1));
    std::vector<Laurent1<Scalar>> out;
    for (std::size_t k = 0; k < s.genus(); ++k) {
        // beta component: -w^{-1} conj(eta)   vs  beta(-1/w)
        Laurent1<Scalar> db = -(winv * detail::conj_in_w(s.eta[k])) - detail::antipodal_pullback(s.beta[k]);
        // eta component: w^{-1} conj(beta)    vs  eta(-1/w)
        Laurent1<Scalar> de = winv * detail::conj_in_w(s.beta[k]) - detail::antipodal_pullback(s.eta[k]);
        if (!db.is_zero())
            out.push_back(db);
        if (!de.is_zero())
            out.push_back(de);
    }
    return out;
}

enum class SectionVerdict { Prefered, NotInvariant, InvariantNotPrefered };

inline std::string to_string(SectionVerdict v) {
    switch (v) {
    case SectionVerdict::Prefered:
        return "prefered";
    case SectionVerdict::NotInvariant:
        return "not-invariant";
    case SectionVerdict::InvariantNotPrefered:
        return "invariant-but-not-prefered";
    }
    return "?";
}

struct Classification {
    SectionVerdict verdict;
    std::optional<HarmonicLine> harmonic; // set for Prefered
};

inline Classification classify_invariant_section(const PolySection &s, int max_degree = 4) {
    require(s.degree() <= max_degree && max_degree <= 4, "candidate degree exceeds the search bound");
    if (!sigma_defect(s).empty())
        return {SectionVerdict::NotInvariant, std::nullopt};
    ScalarVector nu, theta;
    for (std::size_t k = 0; k < s.genus(); ++k) {
        nu.push_back(s.beta[k].coeff(0));
        theta.push_back(s.eta[k].coeff(0));
    }
    HarmonicLine h(nu, theta);
    PolySection p = PolySection::of(h);
    if (p.beta == s.beta && p.eta == s.eta)
        return {SectionVerdict::Prefered, h};
    return {SectionVerdict::InvariantNotPrefered, std::nullopt};
}

} // namespace nahodge

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "nahodge/birkhoff.hpp"
#include "nahodge/errors.hpp"
#include "nahodge/ratfun.hpp"

namespace nahodge {

using DiskMatrix = ZMatrix<RatFun>;

/// Bundle on P^1 over the formal disk: transition T(z, s) whose coefficients
/// are rational functions in s regular at s = 0.
class DiskFamily {
  public:
    explicit DiskFamily(DiskMatrix T) : T_(std::move(T)) {
        require(T_.is_square() && T_.rows() > 0, "transition matrix must be square and nonempty");
        for (const auto &e : T_.data())
            for (const auto &[k, c] : e.terms())
                require(c.regular_at_zero(), "coefficient has a pole at s = 0");
        Laurent1<RatFun> d = determinant(T_);
        require(!d.is_zero() && d.is_monomial(), "determinant is not c(s) z^d");
        require(!d.coeff(d.min_exp()).at_zero().is_zero(), "determinant vanishes at s = 0");
    }

    std::size_t rank() const { return T_.rows(); }
    const DiskMatrix &transition() const { return T_; }

    ZMatrix<Scalar> special_fiber() const {
        return T_.map([](const Laurent1<RatFun> &p) { return p.map_coeffs([](const RatFun &c) { return c.at_zero(); }); });
    }

    friend bool operator==(const DiskFamily &a, const DiskFamily &b) { return a.T_ == b.T_; }

  private:
    DiskMatrix T_;
};

inline std::vector<int> generic_splitting(const DiskFamily &F) {
    return P1Bundle<RatFun>(F.transition()).splitting_type();
}
inline std::vector<int> special_splitting(const DiskFamily &F) {
    return P1Bundle<Scalar>(F.special_fiber()).splitting_type();
}

inline bool is_balanced(const std::vector<int> &type) {
    return std::all_of(type.begin(), type.end(), [&](int a) { return a == type.front(); });
}

/// L * T * R = T' with L invertible over K[z^{-1}] and R over K[z] (K the
/// fraction field in s): the generic fibers of T and T' agree.
struct GenericEquivalence {
    DiskMatrix L, R;
};

struct HNRecord {
    std::size_t step;
    std::vector<int> special_type;
};

struct LangtonStep {
    DiskFamily result;
    GenericEquivalence certificate;
    std::size_t modifications; // elementary modifications performed
};

struct LangtonResult {
    DiskFamily result;
    std::vector<HNRecord> trail;
    std::vector<GenericEquivalence> certificates;
};

namespace detail {

inline Laurent1<RatFun> lift(const Laurent1<Scalar> &p) {
    return p.map_coeffs([](const Scalar &c) { return RatFun(c); });
}
inline DiskMatrix lift(const ZMatrix<Scalar> &m) { return m.map([](const Laurent1<Scalar> &p) { return lift(p); }); }

inline DiskMatrix s_diagonal(const std::vector<int> &e) {
    DiskMatrix d(e.size(), e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        d(i, i) = Laurent1<RatFun>(RatFun::s_power(e[i]));
    return d;
}

inline bool z_constant_unit(const DiskMatrix &m) {
    Laurent1<RatFun> d = determinant(m);
    return d.is_monomial() && d.min_exp() == 0;
}

/// Factorization of the special fiber; a diagonal monomial fiber is used as is.
inline BirkhoffFactorization<Scalar> special_factorization(const ZMatrix<Scalar> &T0) {
    const std::size_t n = T0.rows();
    bool diagonal = true;
    for (std::size_t i = 0; i < n && diagonal; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i == j ? !T0(i, i).is_monomial() : !T0(i, j).is_zero()) {
                diagonal = false;
                break;
            }
    if (diagonal) {
        BirkhoffFactorization<Scalar> f;
        std::vector<int> e(n);
        f.A = ZMatrix<Scalar>(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            e[i] = T0(i, i).min_exp();
            f.A(i, i) = Laurent1<Scalar>(T0(i, i).coeff(e[i]));
            f.exponents.push_back(-e[i]);
        }
        f.D = z_diagonal<Scalar>(e);
        f.C = ZMatrix<Scalar>::identity(n, Laurent1<Scalar>(), z_one<Scalar>());
        return f;
    }
    auto cert = P1Bundle<Scalar>(T0).factorization_certificate();
    if (!cert)
        throw InvariantError("Birkhoff certificate search failed on the special fiber");
    return *cert;
}

} // namespace detail

/// One elementary modification along the below-average summands of the
/// special fiber.
inline std::pair<DiskFamily, GenericEquivalence> elementary_modification(const DiskFamily &F) {
    const std::size_t n = F.rank();
    const ZMatrix<Scalar> T0 = F.special_fiber();
    BirkhoffFactorization<Scalar> f = detail::special_factorization(T0);
    require(!is_balanced(f.exponents), "special fiber is already semistable");
    long total = 0;
    for (int a : f.exponents)
        total += a;
    std::vector<int> delta(n), neg_delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        delta[i] = static_cast<long>(n) * f.exponents[i] < total ? 1 : 0;
        neg_delta[i] = -delta[i];
    }
    DiskMatrix L = detail::s_diagonal(neg_delta) * detail::lift(unit_inverse(f.A));
    DiskMatrix R = detail::lift(unit_inverse(f.C)) * detail::s_diagonal(delta);
    DiskMatrix T1 = L * F.transition() * R;
    for (const auto &e : T1.data())
        for (const auto &[k, c] : e.terms())
            ensure(c.regular_at_zero(), "elementary modification produced a pole at s = 0");
    ensure(detail::z_constant_unit(L) && detail::z_constant_unit(R), "modification factors are not chart units");
    return {DiskFamily(T1), GenericEquivalence{L, R}};
}

inline bool verify_equivalence(const DiskFamily &from, const DiskFamily &to, const GenericEquivalence &g) {
    auto amax = max_z_exp(g.L);
    auto cmin = min_z_exp(g.R);
    if ((amax && *amax > 0) || (cmin && *cmin < 0))
        return false;
    if (!detail::z_constant_unit(g.L) || !detail::z_constant_unit(g.R))
        return false;
    return g.L * from.transition() * g.R == to.transition();
}

/// Elementary modifications until the special splitting type changes; the
/// new type is lexicographically smaller.
inline LangtonStep langton_step(const DiskFamily &F, std::size_t max_modifications = 64) {
    const std::vector<int> before = special_splitting(F);
    require(!is_balanced(before), "special fiber is already semistable");
    DiskFamily cur = F;
    const std::size_t n = F.rank();
    GenericEquivalence total{ZMatrix<RatFun>::identity(n, Laurent1<RatFun>(), z_one<RatFun>()),
                             ZMatrix<RatFun>::identity(n, Laurent1<RatFun>(), z_one<RatFun>())};
    for (std::size_t k = 1; k <= max_modifications; ++k) {
        auto [next, g] = elementary_modification(cur);
        total.L = g.L * total.L;
        total.R = total.R * g.R;
        cur = next;
        std::vector<int> after = special_splitting(cur);
        if (after != before) {
            ensure(after < before, "special splitting type did not decrease");
            ensure(verify_equivalence(F, cur, total), "composed certificate does not re-multiply");
            return {cur, total, k};
        }
    }
    throw InvariantError("elementary modification bound exceeded");
}

inline LangtonResult langton_reduce(const DiskFamily &F, std::size_t max_steps = 64) {
    require(is_balanced(generic_splitting(F)), "generic fiber not semistable");
    LangtonResult r{F, {}, {}};
    std::vector<int> type = special_splitting(F);
    r.trail.push_back({0, type});
    for (std::size_t step = 1; !is_balanced(type); ++step) {
        if (step > max_steps)
            throw InvariantError("Langton step bound exceeded");
        LangtonStep s = langton_step(r.result);
        r.result = s.result;
        r.certificates.push_back(s.certificate);
        type = special_splitting(r.result);
        ensure(type < r.trail.back().special_type, "trail is not strictly decreasing");
        r.trail.push_back({step, type});
    }
    return r;
}

} // namespace nahodge

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "nahodge/errors.hpp"
#include "nahodge/laurent.hpp"
#include "nahodge/matrix.hpp"
#include "nahodge/scalar.hpp"
#include "nahodge/smith.hpp"

namespace nahodge {

/// CW complex over the torus of rank a: m attached 2-spheres, l attached
/// 3-cells, attaching matrix A (l x m) over the group ring Z[t^{+-1}].
class CWPresentation {
  public:
    CWPresentation(std::size_t a, LaurentMatrix A) : a_(a), A_(std::move(A)) {
        require(A_.rows() > 0 && A_.cols() > 0, "attaching matrix must have positive dimensions");
        for (const auto &e : A_.data()) {
            require(e.nvars() == a_, "attaching matrix entry has the wrong number of variables");
            require(e.has_integer_coefficients(), "attaching matrix must have integer coefficients");
        }
    }

    std::size_t a() const { return a_; }
    std::size_t m() const { return A_.cols(); }
    std::size_t l() const { return A_.rows(); }
    const LaurentMatrix &A() const { return A_; }

    std::size_t rank_at(std::span<const Scalar> rho) const {
        require(rho.size() == a_, "character has the wrong number of components");
        return rank(eval_character(A_, rho));
    }

  private:
    std::size_t a_;
    LaurentMatrix A_;
};

inline bool is_trivial_character(std::span<const Scalar> rho) {
    return std::all_of(rho.begin(), rho.end(), [](const Scalar &c) { return c.is_one(); });
}

struct BettiDims {
    std::size_t h2, h3;
};

inline BettiDims betti_dims(const CWPresentation &P, std::span<const Scalar> rho) {
    require(rho.size() == P.a(), "character has the wrong number of components");
    for (const auto &c : rho)
        require(!c.is_zero(), "character component must be nonzero");
    require(!is_trivial_character(rho), "trivial character: the exact sequence needs a nontrivial local system");
    const std::size_t r = P.rank_at(rho);
    return {P.m() - r, P.l() - r};
}

namespace detail {
inline std::vector<LaurentPoly> nonzero_minors(const CWPresentation &P, std::size_t size) {
    const std::size_t a = P.a();
    if (size > std::min(P.l(), P.m()))
        return {LaurentPoly::constant(a, Scalar(0))};
    std::vector<LaurentPoly> out;
    for (auto &p : minors(P.A(), size))
        if (!p.is_zero())
            out.push_back(std::move(p));
    if (out.empty())
        out.push_back(LaurentPoly::constant(a, Scalar(0)));
    return out;
}
} // namespace detail

/// Generators of {rho : dim H^2 >= k} = {rank A(rho) <= m - k}: the nonzero
/// (m-k+1)-minors, or [0] when the condition is vacuous.
inline std::vector<LaurentPoly> jump_ideal(const CWPresentation &P, std::size_t k) {
    require(k >= 1 && k <= P.m(), "jump index out of range");
    return detail::nonzero_minors(P, P.m() - k + 1);
}

/// Generators of {rho : dim H^3 >= j} = {rank A(rho) <= l - j}.
inline std::vector<LaurentPoly> jump_ideal_h3(const CWPresentation &P, long j) {
    const long l = static_cast<long>(P.l());
    if (j > l)
        return {LaurentPoly::constant(P.a(), Scalar(1))};
    if (j <= 0)
        return {LaurentPoly::constant(P.a(), Scalar(0))};
    return detail::nonzero_minors(P, static_cast<std::size_t>(l - j + 1));
}

/// Translated subtorus t_j = zeta_j * prod_k s_k^{E_jk}.
struct SubtorusParam {
    std::vector<Scalar> zeta;
    std::vector<std::vector<int>> E; // a x b
    std::size_t b = 0;

    void validate(std::size_t a) const {
        require(zeta.size() == a && E.size() == a, "subtorus data has the wrong number of rows");
        for (const auto &z : zeta)
            require(!z.is_zero(), "translation components must be invertible");
        IntMatrix m(a, b, Integer(0));
        for (std::size_t j = 0; j < a; ++j) {
            require(E[j].size() == b, "exponent matrix row has the wrong length");
            for (std::size_t k = 0; k < b; ++k)
                m(j, k) = E[j][k];
        }
        require(b == 0 || int_rank(m) == b, "exponent matrix must have full column rank");
    }
};

inline bool contains_subtorus(const CWPresentation &P, std::size_t k, const SubtorusParam &S) {
    S.validate(P.a());
    for (const auto &g : jump_ideal(P, k))
        if (!g.substitute_monomial(S.zeta, S.E, S.b).is_zero())
            return false;
    return true;
}

/// Small structured sample set: roots of unity of order <= 4 and small rationals.
inline const std::vector<Scalar> &character_sample_values() {
    static const std::vector<Scalar> values = {
        Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i(), Scalar(2), Scalar(Rational(1, 2)), Scalar(-2),
        Scalar(Rational(-1, 2)), Scalar(1, 1), Scalar(1, -1), Scalar(3)};
    return values;
}

/// Random characters (from a fixed sample set) lying in the k-th degree-2 jump
/// locus; deterministic in the seed, duplicates removed.
inline std::vector<std::vector<Scalar>> character_scan(const CWPresentation &P, std::size_t k, std::size_t samples,
                                                       std::uint64_t seed) {
    require(k >= 1 && k <= P.m(), "jump index out of range");
    require(samples <= 100000, "sample count too large");
    const auto &vals = character_sample_values();
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Scalar>> out;
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Scalar> rho(P.a());
        for (auto &c : rho)
            c = vals[rng() % vals.size()];
        if (is_trivial_character(rho))
            continue;
        if (P.rank_at(rho) + k > P.m())
            continue;
        if (std::find(out.begin(), out.end(), rho) == out.end())
            out.push_back(std::move(rho));
    }
    return out;
}

} // namespace nahodge

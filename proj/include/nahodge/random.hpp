#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nahodge/birkhoff.hpp"
#include "nahodge/matrix.hpp"
#include "nahodge/scalar.hpp"

/// Small random exact objects for property tests.
namespace nahodge::gen {

using Rng = std::mt19937_64;

inline long uniform(Rng &rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational rational(Rng &rng, long num = 3, long den = 3) {
    Rational q(uniform(rng, -num, num), uniform(rng, 1, den));
    q.canonicalize();
    return q;
}

inline Scalar gaussian(Rng &rng, long num = 3, long den = 3) { return Scalar(rational(rng, num, den), rational(rng, num, den)); }

inline Scalar nonzero_gaussian(Rng &rng, long num = 3, long den = 3) {
    for (;;)
        if (Scalar s = gaussian(rng, num, den); !s.is_zero())
            return s;
}

inline std::vector<Scalar> gaussian_vector(Rng &rng, std::size_t n) {
    std::vector<Scalar> v(n);
    for (auto &c : v)
        c = gaussian(rng);
    return v;
}

inline ScalarMatrix invertible_matrix(Rng &rng, std::size_t n) {
    for (;;) {
        ScalarMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = gaussian(rng, 2, 2);
        if (rank(m) == n)
            return m;
    }
}

/// Unimodular matrix over F[z] (z_sign = +1) or F[z^{-1}] (z_sign = -1): a
/// product of elementary row operations and a constant invertible diagonal.
inline ZMatrix<Scalar> unimodular(Rng &rng, std::size_t n, int z_sign, int ops = 4) {
    ZMatrix<Scalar> m = ZMatrix<Scalar>::identity(n, Laurent1<Scalar>(), z_one<Scalar>());
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Laurent1<Scalar>(nonzero_gaussian(rng, 2, 2));
    if (n < 2)
        return m;
    for (int k = 0; k < ops; ++k) {
        const std::size_t i = uniform(rng, 0, n - 1);
        std::size_t j = uniform(rng, 0, n - 2);
        if (j >= i)
            ++j;
        Laurent1<Scalar> f = Laurent1<Scalar>::monomial(z_sign * static_cast<int>(uniform(rng, 0, 1)), gaussian(rng, 2, 1));
        for (std::size_t c = 0; c < n; ++c)
            m(i, c) += f * m(j, c);
    }
    return m;
}

} // namespace nahodge::gen

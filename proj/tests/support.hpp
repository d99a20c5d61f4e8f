#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "nahodge/nahodge.hpp"
#include "nahodge/random.hpp"

namespace support {

using namespace nahodge;

inline Laurent1<Scalar> zmono(int e, const Scalar &c = Scalar(1)) { return Laurent1<Scalar>::monomial(e, c); }

inline ZMatrix<Scalar> zmatrix(std::vector<std::vector<Laurent1<Scalar>>> rows) { return ZMatrix<Scalar>::from_rows(rows); }

inline std::vector<Scalar> vec(std::initializer_list<Scalar> xs) { return std::vector<Scalar>(xs); }

inline Scalar q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return Scalar(r);
}

inline Scalar gi(long re, long im) { return Scalar(Rational(re), Rational(im)); }

} // namespace support

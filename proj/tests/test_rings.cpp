#include "support.hpp"

#include <numeric>

using namespace support;

TEST_CASE("gaussian rational arithmetic", "[rings]") {
    const Scalar i = Scalar::i();
    CHECK(i * i == Scalar(-1));
    CHECK(i.conj() == -i);
    CHECK((gi(1, 2) * gi(3, -1)) == gi(5, 5));
    CHECK(gi(1, 1).inverse() == Scalar(Rational(1, 2), Rational(-1, 2)));
    CHECK(Scalar::parse("3/4-2*i") == Scalar(Rational(3, 4), Rational(-2)));
    CHECK_THROWS_AS(Scalar(0).inverse(), PreconditionError);
}

TEST_CASE("cyclotomic scalars", "[rings]") {
    const Scalar z8 = Scalar::root_of_unity(8);
    CHECK(z8.pow(8) == Scalar(1));
    CHECK(z8.pow(4) == Scalar(-1));
    CHECK(z8.conj() == z8.pow(7));
    CHECK(z8 * z8.conj() == Scalar(1));
    // zeta_8^2 is i
    CHECK(z8.pow(2) == Scalar::i());
    const Scalar z5 = Scalar::root_of_unity(5);
    Scalar sum(0);
    for (int k = 0; k < 5; ++k)
        sum += z5.pow(k);
    CHECK(sum.is_zero());
}

TEST_CASE("scalar text round trip", "[rings]") {
    gen::Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const Scalar s = gen::gaussian(rng, 9, 7);
        CHECK(Scalar::parse(s.to_string()) == s);
    }
}

TEST_CASE("conjugation is an involutive field automorphism", "[rings][property]") {
    gen::Rng rng(12);
    for (int k = 0; k < 200; ++k) {
        const Scalar a = gen::gaussian(rng), b = gen::gaussian(rng);
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());
    }
}

TEST_CASE("character evaluation", "[rings]") {
    LaurentPoly p = LaurentPoly::monomial({1, -1}, Scalar(1));
    const std::vector<Scalar> rho{Scalar(2), gi(1, 1)};
    CHECK(p.eval(rho) == gi(1, -1));
    LaurentPoly c = LaurentPoly::variable(2, 0) * LaurentPoly::variable(2, 0, -1);
    CHECK(c == LaurentPoly::constant(2, Scalar(1)));
}

TEST_CASE("rank over gaussian rationals", "[rings]") {
    ScalarMatrix m = ScalarMatrix::from_rows({{Scalar(1), Scalar::i()}, {-Scalar::i(), Scalar(1)}});
    CHECK(rank(m) == 1);
    CHECK(rank(ScalarMatrix::identity(3)) == 3);
    CHECK(rank(ScalarMatrix(2, 3)) == 0);
}

TEST_CASE("minors of a unimodular laurent matrix", "[rings]") {
    const LaurentPoly t = LaurentPoly::variable(1, 0), one = LaurentPoly::constant(1, Scalar(1));
    LaurentMatrix m = LaurentMatrix::from_rows({{t, one}, {one, LaurentPoly::variable(1, 0, -1)}});
    auto all = minors(m, 2);
    REQUIRE(all.size() == 1);
    CHECK(all[0].is_zero());
    CHECK(minors(m, 1).size() == 4);
}

namespace {

// d_1 d_2 ... d_k = gcd of the k x k minors.
Integer determinantal_divisor(const IntMatrix &m, std::size_t k) {
    Integer g = 0;
    for (const auto &rs : k_subsets(m.rows(), k))
        for (const auto &cs : k_subsets(m.cols(), k))
            g = gcd(g, Integer(int_det(m.select(rs, cs))));
    return g;
}

} // namespace

TEST_CASE("smith normal form examples", "[rings][smith]") {
    auto f = smith_normal_form(IntMatrix::from_rows({{Integer(2), Integer(0)}, {Integer(0), Integer(3)}}));
    CHECK(f.D == IntMatrix::from_rows({{Integer(1), Integer(0)}, {Integer(0), Integer(6)}}));
    auto z = smith_normal_form(IntMatrix(2, 2, Integer(0)));
    CHECK(z.D.is_zero_matrix());
}

TEST_CASE("smith normal form against determinantal divisors", "[rings][smith][property]") {
    gen::Rng rng(13);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t r = gen::uniform(rng, 1, 4), c = gen::uniform(rng, 1, 4);
        IntMatrix m(r, c, Integer(0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = Integer(gen::uniform(rng, -6, 6));
        const SmithForm f = smith_normal_form(m);
        CHECK(f.U * m * f.V == f.D);
        CHECK(abs(int_det(f.U)) == 1);
        CHECK(abs(int_det(f.V)) == 1);
        Integer prefix = 1;
        const std::size_t rk = int_rank(m);
        for (std::size_t k = 1; k <= std::min(r, c); ++k) {
            const Integer d = f.D(k - 1, k - 1);
            if (k > 1 && d != 0)
                CHECK(d % f.D(k - 2, k - 2) == 0);
            prefix *= d;
            CHECK(prefix == determinantal_divisor(m, k));
            CHECK((d != 0) == (k <= rk));
        }
    }
}

TEST_CASE("birkhoff splitting of worked examples", "[rings][birkhoff]") {
    const Laurent1<Scalar> O;
    CHECK(P1Bundle<Scalar>(ZMatrix<Scalar>::identity(2, O, zmono(0))).splitting_type() == std::vector<int>{0, 0});
    CHECK(P1Bundle<Scalar>(zmatrix({{zmono(-2), O}, {O, zmono(1)}})).splitting_type() == std::vector<int>{2, -1});
    P1Bundle<Scalar> e(zmatrix({{zmono(1), zmono(0)}, {O, zmono(-1)}}));
    CHECK(e.splitting_type() == std::vector<int>{0, 0});
    CHECK(e.det_exponent() == 0);
    auto cert = e.factorization_certificate();
    REQUIRE(cert);
    CHECK(e.verify(*cert));
}

TEST_CASE("sections of line bundles", "[rings][birkhoff]") {
    for (int a = -3; a <= 3; ++a) {
        P1Bundle<Scalar> L(zmatrix({{zmono(-a)}}));
        CHECK(L.splitting_type() == std::vector<int>{a});
        for (int m = -2; m <= 2; ++m)
            CHECK(L.h0_twist(m) == static_cast<std::size_t>(std::max(0, a + m + 1)));
    }
}

TEST_CASE("non-unit determinant is rejected", "[rings][birkhoff]") {
    CHECK_THROWS_AS(P1Bundle<Scalar>(zmatrix({{zmono(0) + zmono(1)}})), PreconditionError);
}

TEST_CASE("construct then recover splitting types", "[rings][birkhoff][property]") {
    gen::Rng rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = gen::uniform(rng, 1, 3);
        std::vector<int> a(n), neg(n);
        for (std::size_t k = 0; k < n; ++k) {
            a[k] = static_cast<int>(gen::uniform(rng, -3, 3));
            neg[k] = -a[k];
        }
        ZMatrix<Scalar> g = gen::unimodular(rng, n, -1) * z_diagonal<Scalar>(neg) * gen::unimodular(rng, n, +1);
        P1Bundle<Scalar> E(g);
        std::vector<int> want = a;
        std::sort(want.rbegin(), want.rend());
        CHECK(E.splitting_type() == want);
        CHECK(std::accumulate(a.begin(), a.end(), 0) == -E.det_exponent());
        std::size_t h0 = 0;
        for (int x : a)
            h0 += std::max(0, x + 1);
        CHECK(E.h0_twist(0) == h0);
    }
}

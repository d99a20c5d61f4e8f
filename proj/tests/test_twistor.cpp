#include "support.hpp"

using namespace support;

TEST_CASE("stereographic dictionary", "[twistor]") {
    CHECK(stereographic(Scalar(0)) == SpherePoint{Rational(1), Rational(0), Rational(0)});
    CHECK(stereographic(Scalar(1)) == SpherePoint{Rational(0), Rational(1), Rational(0)});
    CHECK(stereographic(Scalar::i()) == SpherePoint{Rational(0), Rational(0), Rational(1)});
    CHECK(stereographic(std::nullopt) == SpherePoint{Rational(-1), Rational(0), Rational(0)});
    gen::Rng rng(31);
    for (int k = 0; k < 100; ++k) {
        const Scalar lam = gen::gaussian(rng, 7, 5);
        SpherePoint p = stereographic(lam);
        CHECK(p.on_sphere());
        CHECK(inverse_stereographic(p) == lam);
    }
}

TEST_CASE("standard structure quaternion relations", "[twistor]") {
    QuaternionicSpace Q = QuaternionicSpace::standard(2);
    const RealLinearOp one = RealLinearOp::identity(4);
    CHECK(Q.I() * Q.I() == -one);
    CHECK(Q.J() * Q.J() == -one);
    CHECK(Q.K() * Q.K() == -one);
    CHECK(Q.I() * Q.J() == Q.K());
    CHECK(Q.structure_at(std::nullopt) == -Q.I());
}

TEST_CASE("J must square to minus one", "[twistor]") {
    ScalarMatrix bad = ScalarMatrix::from_rows({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}});
    CHECK_THROWS_AS(QuaternionicSpace(1, bad), PreconditionError);
}

TEST_CASE("every sphere point is a complex structure", "[twistor][property]") {
    gen::Rng rng(32);
    QuaternionicSpace Q = QuaternionicSpace::standard(2);
    const RealLinearOp minus_one = -RealLinearOp::identity(4);
    for (int k = 0; k < 100; ++k) {
        const Scalar lam = gen::gaussian(rng, 5, 4);
        RealLinearOp op = Q.structure_at(lam);
        CHECK(op * op == minus_one);
        CHECK(Q.structure_conjugated(lam) == op);
    }
}

TEST_CASE("invariant section through a point", "[twistor]") {
    QuaternionicSpace Q = QuaternionicSpace::standard(1);
    SectionO1 s = Q.invariant_section_through(vec({1, 0}), Scalar(1));
    CHECK(s.a == vec({q(1, 2), q(-1, 2)}));
    CHECK(s.b == vec({q(1, 2), q(1, 2)}));
    CHECK(s.at(Scalar(1)) == vec({1, 0}));
    CHECK(Q.sigma(s) == s);
}

TEST_CASE("sigma is an involution", "[twistor][property]") {
    gen::Rng rng(33);
    QuaternionicSpace Q = QuaternionicSpace::standard(2);
    for (int k = 0; k < 100; ++k) {
        SectionO1 s{gen::gaussian_vector(rng, 4), gen::gaussian_vector(rng, 4)};
        CHECK(Q.sigma(Q.sigma(s)) == s);
        SectionO1 inv = Q.invariant_section(s.a);
        CHECK(Q.sigma(inv) == inv);
    }
}

TEST_CASE("twistor bundle is O(1)^2r", "[twistor]") {
    for (std::size_t r = 1; r <= 3; ++r) {
        TwistorModel m = twistor_bundle(QuaternionicSpace::standard(r));
        CHECK(m.bundle.splitting_type() == std::vector<int>(2 * r, 1));
        CHECK(m.bundle.h0_twist(0) == 4 * r);
        CHECK(QuaternionicSpace::standard(r).invariant_section_dimension() == 4 * r);
    }
}

TEST_CASE("quaternionic quadratic forms vanish", "[twistor]") {
    CHECK(quaternionic_sff_space(1, 1) == 0);
    CHECK(quaternionic_sff_space(2, 1) == 0);
    // complex-bilinear symmetric maps C^2 x C^2 -> C^2: real dimension 2 * 3 * 2
    CHECK(quaternionic_sff_space(1, 1, false) == 12);
}

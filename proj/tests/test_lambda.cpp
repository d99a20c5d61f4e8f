#include "support.hpp"

using namespace support;

namespace {

HarmonicLine random_line(gen::Rng &rng, std::size_t g) { return {gen::gaussian_vector(rng, g), gen::gaussian_vector(rng, g)}; }

Scalar antipode(const Scalar &lam) { return -(lam.conj().inverse()); }

// Equivariance checked at sample points; both sides are Laurent polynomials in
// conj(lambda) with exponents in [-5, 4], so 12 distinct samples decide it.
bool invariant_by_sampling(const PolySection &s) {
    for (int k = 1; k <= 12; ++k) {
        const Scalar lam(Rational(k), Rational(k % 3));
        if (sigma_prime(s.at(lam)) != s.at(antipode(lam)))
            return false;
    }
    return true;
}

PolySection random_section(gen::Rng &rng, std::size_t g, int degree) {
    PolySection s;
    for (std::size_t k = 0; k < g; ++k) {
        Laurent1<Scalar> b, e;
        for (int d = 0; d <= degree; ++d) {
            b.add_term(d, gen::gaussian(rng, 2, 2));
            e.add_term(d, gen::gaussian(rng, 2, 2));
        }
        s.beta.push_back(b);
        s.eta.push_back(e);
    }
    return s;
}

} // namespace

TEST_CASE("prefered section formula", "[lambda]") {
    HarmonicLine h({Scalar(1), Scalar::i()}, {gi(2, -1), q(1, 2)});
    HodPoint p = prefered_section(h, Scalar::i());
    CHECK(p.beta == vec({gi(0, 2), Scalar(Rational(0), Rational(3, 2))}));
    CHECK(p.eta == vec({gi(2, -2), q(-1, 2)}));
    CHECK(prefered_section(h, Scalar(0)).beta == h.nu);
    CHECK(prefered_section(h, Scalar(0)).eta == h.theta);
}

TEST_CASE("sigma' sends prefered sections to prefered sections", "[lambda][property]") {
    gen::Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        HarmonicLine h = random_line(rng, gen::uniform(rng, 1, 5));
        const Scalar lam = gen::nonzero_gaussian(rng);
        CHECK(sigma_prime(prefered_section(h, lam)) == prefered_section(h, antipode(lam)));
    }
    HarmonicLine h = random_line(rng, 3);
    CHECK(sigma_prime(prefered_section(h, Scalar::i())) == prefered_section(h, -Scalar::i()));
}

TEST_CASE("sigma' is an involution", "[lambda][property]") {
    gen::Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        HodPoint p{gen::gaussian_vector(rng, 3), gen::gaussian_vector(rng, 3), gen::nonzero_gaussian(rng)};
        CHECK(sigma_prime(sigma_prime(p)) == p);
    }
    CHECK_THROWS_AS(sigma_prime(HodPoint{vec({1}), vec({1}), Scalar(0)}), PreconditionError);
}

TEST_CASE("multiplicative group action", "[lambda]") {
    gen::Rng rng(43);
    HodPoint p{vec({1}), vec({3}), Scalar::i()};
    CHECK(gm_act(Scalar(2), p) == HodPoint{vec({1}), vec({6}), gi(0, 2)});
    for (int trial = 0; trial < 50; ++trial) {
        const Scalar t = gen::nonzero_gaussian(rng), u = gen::nonzero_gaussian(rng);
        CHECK(gm_act(t, gm_act(u, p)) == gm_act(t * u, p));
    }
    CHECK(gm_act(Scalar(1), p) == p);
}

TEST_CASE("evaluation determines the harmonic data", "[lambda][property]") {
    gen::Rng rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        HarmonicLine h = random_line(rng, 2);
        HarmonicLine other = random_line(rng, 2);
        const Scalar lam = gen::gaussian(rng);
        if (h == other)
            continue;
        CHECK(prefered_section(h, lam) != prefered_section(other, lam));
        auto c = classify_invariant_section(PolySection::of(h));
        CHECK(c.verdict == SectionVerdict::Prefered);
        REQUIRE(c.harmonic);
        CHECK(*c.harmonic == h);
    }
}

TEST_CASE("classifier verdicts", "[lambda]") {
    PolySection s = PolySection::of(HarmonicLine({Scalar(1)}, {gi(2, -1)}));
    CHECK(classify_invariant_section(s).verdict == SectionVerdict::Prefered);
    PolySection wrong = s;
    wrong.beta[0].add_term(1, Scalar(1));
    CHECK(classify_invariant_section(wrong).verdict == SectionVerdict::NotInvariant);
    PolySection quad = s;
    quad.beta[0].add_term(2, Scalar(1));
    CHECK(classify_invariant_section(quad).verdict == SectionVerdict::NotInvariant);
}

TEST_CASE("classifier agrees with pointwise equivariance", "[lambda][property]") {
    gen::Rng rng(45);
    int prefered = 0;
    for (int trial = 0; trial < 300; ++trial) {
        PolySection s = trial % 3 == 0 ? PolySection::of(random_line(rng, gen::uniform(rng, 1, 3)))
                                       : random_section(rng, gen::uniform(rng, 1, 3), static_cast<int>(gen::uniform(rng, 0, 4)));
        auto c = classify_invariant_section(s);
        CHECK(c.verdict != SectionVerdict::InvariantNotPrefered);
        CHECK((c.verdict == SectionVerdict::Prefered) == invariant_by_sampling(s));
        prefered += c.verdict == SectionVerdict::Prefered;
    }
    CHECK(prefered >= 100);
}

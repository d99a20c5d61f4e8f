#include "support.hpp"

using namespace support;

namespace {

LaurentPoly t_minus_one(std::size_t nvars, std::size_t j) {
    return LaurentPoly::variable(nvars, j) - LaurentPoly::constant(nvars, Scalar(1));
}

CWPresentation random_presentation(gen::Rng &rng) {
    const std::size_t a = 2, l = gen::uniform(rng, 1, 3), m = gen::uniform(rng, 1, 3);
    LaurentMatrix A(l, m, LaurentPoly::constant(a, Scalar(0)));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (int terms = static_cast<int>(gen::uniform(rng, 0, 2)); terms > 0; --terms)
                A(i, j) += LaurentPoly::monomial({static_cast<int>(gen::uniform(rng, -1, 1)), static_cast<int>(gen::uniform(rng, -1, 1))},
                                                 Scalar(gen::uniform(rng, -2, 2)));
    return {a, A};
}

bool in_locus_by_rank(const CWPresentation &P, std::size_t k, std::span<const Scalar> rho) { return P.rank_at(rho) + k <= P.m(); }

bool in_locus_by_ideal(const CWPresentation &P, std::size_t k, std::span<const Scalar> rho) {
    for (const auto &g : jump_ideal(P, k))
        if (!g.eval(rho).is_zero())
            return false;
    return true;
}

} // namespace

TEST_CASE("circle with trivial attaching map", "[jumploci]") {
    CWPresentation P(1, LaurentMatrix::from_rows({{t_minus_one(1, 0)}}));
    const std::vector<Scalar> rho{Scalar(2)};
    BettiDims d = betti_dims(P, rho);
    CHECK(d.h2 == 0);
    CHECK(d.h3 == 0);
    CHECK_THROWS_AS(betti_dims(P, std::vector<Scalar>{Scalar(1)}), PreconditionError);
}

TEST_CASE("diagonal presentation", "[jumploci]") {
    const LaurentPoly zero = LaurentPoly::constant(2, Scalar(0));
    CWPresentation P(2, LaurentMatrix::from_rows({{t_minus_one(2, 0), zero}, {zero, t_minus_one(2, 1)}}));
    auto gens = jump_ideal(P, 1);
    REQUIRE(gens.size() == 1);
    CHECK(gens[0] == t_minus_one(2, 0) * t_minus_one(2, 1));
    auto top = jump_ideal(P, 2);
    CHECK(top.size() == 2);
    CHECK(betti_dims(P, std::vector<Scalar>{Scalar(1), Scalar(3)}).h2 == 1);
}

TEST_CASE("subtorus containment", "[jumploci]") {
    CWPresentation P(2, LaurentMatrix::from_rows({{t_minus_one(2, 0)}}));
    SubtorusParam through_one{{Scalar(1), Scalar(1)}, {{0}, {1}}, 1};
    SubtorusParam through_minus_one{{Scalar(-1), Scalar(1)}, {{0}, {1}}, 1};
    SubtorusParam torsion{{Scalar::i(), Scalar(1)}, {{0}, {1}}, 1};
    CHECK(contains_subtorus(P, 1, through_one));
    CHECK_FALSE(contains_subtorus(P, 1, through_minus_one));
    CHECK_FALSE(contains_subtorus(P, 1, torsion));
    SubtorusParam dependent{{Scalar(1), Scalar(1)}, {{1, 2}, {1, 2}}, 2};
    CHECK_THROWS_AS(contains_subtorus(P, 1, dependent), PreconditionError);
}

TEST_CASE("jump ideal cuts out the rank locus", "[jumploci][property]") {
    gen::Rng rng(51);
    const auto &vals = character_sample_values();
    for (int trial = 0; trial < 200; ++trial) {
        CWPresentation P = random_presentation(rng);
        const std::size_t k = gen::uniform(rng, 1, P.m());
        for (int s = 0; s < 10; ++s) {
            std::vector<Scalar> rho{vals[gen::uniform(rng, 0, vals.size() - 1)], vals[gen::uniform(rng, 0, vals.size() - 1)]};
            CHECK(in_locus_by_ideal(P, k, rho) == in_locus_by_rank(P, k, rho));
            if (!is_trivial_character(rho)) {
                BettiDims d = betti_dims(P, rho);
                CHECK(static_cast<long>(d.h2) - static_cast<long>(d.h3) == static_cast<long>(P.m()) - static_cast<long>(P.l()));
            }
        }
    }
}

TEST_CASE("containment agrees with sampling the subtorus", "[jumploci][property]") {
    gen::Rng rng(52);
    int contained = 0;
    for (int trial = 0; trial < 150; ++trial) {
        CWPresentation P = random_presentation(rng);
        const std::size_t k = gen::uniform(rng, 1, P.m());
        SubtorusParam S{{Scalar::root_of_unity(4, gen::uniform(rng, 0, 3)), Scalar(gen::uniform(rng, 0, 1) ? 1 : -1)},
                        {{static_cast<int>(gen::uniform(rng, -2, 2))}, {static_cast<int>(gen::uniform(rng, 1, 2))}},
                        1};
        bool sampled = true;
        // substituted minors have exponents in [-12, 12]; 50 samples decide vanishing
        for (int s = 1; s <= 50 && sampled; ++s) {
            const Scalar x(Rational(s + 1, 2));
            std::vector<Scalar> rho{S.zeta[0] * x.pow(S.E[0][0]), S.zeta[1] * x.pow(S.E[1][0])};
            sampled = in_locus_by_rank(P, k, rho);
        }
        CHECK(contains_subtorus(P, k, S) == sampled);
        contained += sampled;
    }
    CHECK(contained > 0);
}

TEST_CASE("character scan is deterministic and lands in the locus", "[jumploci]") {
    const LaurentPoly zero = LaurentPoly::constant(2, Scalar(0));
    CWPresentation P(2, LaurentMatrix::from_rows({{t_minus_one(2, 0), zero}, {zero, t_minus_one(2, 1)}}));
    auto a = character_scan(P, 1, 40, 7), b = character_scan(P, 1, 40, 7);
    CHECK(a == b);
    CHECK_FALSE(a.empty());
    for (const auto &rho : a)
        CHECK(in_locus_by_rank(P, 1, rho));
}

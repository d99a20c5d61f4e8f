#include "support.hpp"

#include "nahodge/selftest.hpp"

using namespace support;

namespace {

RatFun spoly(std::initializer_list<Scalar> asc) {
    Laurent1<Scalar> p;
    int k = 0;
    for (const auto &c : asc)
        p.add_term(k++, c);
    return RatFun(p);
}

Laurent1<RatFun> dz(int e, const RatFun &c) { return Laurent1<RatFun>::monomial(e, c); }

DiskFamily upper(int a, const RatFun &corner) {
    const Laurent1<RatFun> O;
    return DiskFamily(DiskMatrix::from_rows({{dz(a, RatFun(1)), dz(0, corner)}, {O, dz(-a, RatFun(1))}}));
}

// Specialise s to a value where no coefficient has a pole.
ZMatrix<Scalar> specialise(const DiskFamily &F, const Scalar &s0) {
    return F.transition().map([&](const Laurent1<RatFun> &p) {
        return p.map_coeffs([&](const RatFun &c) { return c.num().eval(s0) / c.den().eval(s0); });
    });
}

std::vector<int> generic_by_specialisation(const DiskFamily &F) { return P1Bundle<Scalar>(specialise(F, q(37, 11))).splitting_type(); }

} // namespace

TEST_CASE("upper triangular family with corner s", "[langton]") {
    DiskFamily F = upper(1, spoly({0, 1}));
    CHECK(generic_splitting(F) == std::vector<int>{0, 0});
    CHECK(special_splitting(F) == std::vector<int>{1, -1});
    LangtonResult r = langton_reduce(F);
    CHECK(r.certificates.size() == 1);
    CHECK(special_splitting(r.result) == std::vector<int>{0, 0});
    CHECK(verify_equivalence(F, r.result, r.certificates[0]));
}

TEST_CASE("larger gap closes in one step", "[langton]") {
    DiskFamily F = upper(2, spoly({0, 1}));
    CHECK(special_splitting(F) == std::vector<int>{2, -2});
    LangtonResult r = langton_reduce(F);
    REQUIRE(r.trail.size() == 2);
    CHECK(r.trail[1].special_type == std::vector<int>{0, 0});
}

TEST_CASE("corner s^2 needs two modifications in its step", "[langton]") {
    LangtonStep s = langton_step(upper(1, spoly({0, 0, 1})));
    CHECK(s.modifications == 2);
    CHECK(special_splitting(s.result) == std::vector<int>{0, 0});
}

TEST_CASE("unbalanced generic fiber is rejected", "[langton]") {
    const Laurent1<RatFun> O;
    DiskFamily F(DiskMatrix::from_rows({{dz(-1, RatFun(1)), O}, {O, dz(1, RatFun(1))}}));
    CHECK(generic_splitting(F) == std::vector<int>{1, -1});
    CHECK_THROWS_AS(langton_reduce(F), PreconditionError);
}

TEST_CASE("semistable special fiber is left alone", "[langton]") {
    DiskFamily F = upper(0, spoly({0, 1}));
    CHECK_THROWS_AS(langton_step(F), PreconditionError);
    LangtonResult r = langton_reduce(F);
    CHECK(r.certificates.empty());
    CHECK(r.result == F);
}

TEST_CASE("poles at the origin are rejected", "[langton]") {
    RatFun inv_s(Laurent1<Scalar>(Scalar(1)), Laurent1<Scalar>::monomial(1, Scalar(1)));
    CHECK_THROWS_AS(upper(1, inv_s), PreconditionError);
}

TEST_CASE("reduction of random families", "[langton][property]") {
    gen::Rng rng(71);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = trial % 3 == 2 ? 3 : 2;
        DiskFamily F = selftest::detail::gap_two_family(rng, n);
        const std::vector<int> generic = generic_splitting(F);
        CHECK(generic == generic_by_specialisation(F));
        if (!is_balanced(generic))
            continue;
        LangtonResult r = langton_reduce(F);
        CHECK(is_balanced(special_splitting(r.result)));
        CHECK(generic_splitting(r.result) == generic);
        CHECK(generic_by_specialisation(r.result) == generic);
        DiskFamily cur = F;
        for (std::size_t k = 0; k < r.certificates.size(); ++k) {
            CHECK(r.trail[k + 1].special_type < r.trail[k].special_type);
            DiskFamily next(r.certificates[k].L * cur.transition() * r.certificates[k].R);
            CHECK(verify_equivalence(cur, next, r.certificates[k]));
            cur = next;
        }
        CHECK(cur == r.result);
        CHECK(langton_reduce(r.result).certificates.empty());
    }
}

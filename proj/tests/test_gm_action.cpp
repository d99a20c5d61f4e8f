#include "support.hpp"

using namespace support;

namespace {

ProjPoint pt(std::initializer_list<Scalar> xs) { return ProjPoint(std::vector<Scalar>(xs)); }

// Landing point of s^{-eps w} x(s) as s -> 0: the coordinates minimising v_i - eps w_i.
ProjPoint landing_oracle(const std::vector<int> &w, const Arc &arc, const Rational &eps) {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < arc.size(); ++i)
        if (arc.nonzero(i)) {
            const Rational v = arc.valuation(i) - eps * w[i];
            if (!best || v < *best)
                best = v;
        }
    std::vector<Scalar> y(arc.size(), Scalar(0));
    for (std::size_t i = 0; i < arc.size(); ++i)
        if (arc.nonzero(i) && arc.valuation(i) - eps * w[i] == *best)
            y[i] = arc.leading(i);
    return ProjPoint(y);
}

// Coordinates of extremal weight in the support.
ProjPoint extremal(const std::vector<int> &w, const ProjPoint &x, bool lowest) {
    auto s = x.support();
    int target = w[s[0]];
    for (auto i : s)
        target = lowest ? std::min(target, w[i]) : std::max(target, w[i]);
    std::vector<Scalar> y(x.size(), Scalar(0));
    for (auto i : s)
        if (w[i] == target)
            y[i] = x[i];
    return ProjPoint(y);
}

Arc random_arc(gen::Rng &rng, std::size_t n) {
    for (;;) {
        std::vector<Laurent1<Scalar>> x(n);
        for (auto &c : x)
            if (gen::uniform(rng, 0, 3))
                c = zmono(static_cast<int>(gen::uniform(rng, 0, 5)), gen::nonzero_gaussian(rng)) + zmono(6, Scalar(1));
        if (std::any_of(x.begin(), x.end(), [](const auto &p) { return !p.is_zero(); }))
            return Arc(x);
    }
}

} // namespace

TEST_CASE("membership for weights 0,1,2 with shift -1/2", "[gm]") {
    WeightedAction W({0, 1, 2}, Rational(-1, 2));
    CHECK(W.membership(pt({1, 1, 0})) == Membership::InU);
    CHECK(W.membership(pt({1, 1, 1})) == Membership::InU);
    CHECK(W.membership(pt({1, 0, 0})) == Membership::InYPlus);
    CHECK(W.membership(pt({0, 1, 1})) == Membership::InYMinus);
    CHECK(W.membership(pt({0, 0, 1})) == Membership::InYMinus);
    Decomposition d = W.decompose();
    CHECK(d.plus == std::vector<int>{0});
    CHECK(d.minus == std::vector<int>{1, 2});
}

TEST_CASE("integral shift is rejected", "[gm]") {
    WeightedAction W({0, 1, 2}, Rational(-1));
    CHECK_THROWS_AS(W.membership(pt({1, 1, 0})), PreconditionError);
}

TEST_CASE("limits pick the extremal weights", "[gm][property]") {
    gen::Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = gen::uniform(rng, 1, 4);
        std::vector<int> w(n);
        for (auto &x : w)
            x = static_cast<int>(gen::uniform(rng, -2, 2));
        WeightedAction W(w, Rational(1, 2));
        std::vector<Scalar> x(n);
        for (auto &c : x)
            c = gen::uniform(rng, 0, 2) ? gen::gaussian(rng) : Scalar(0);
        if (std::all_of(x.begin(), x.end(), [](const Scalar &c) { return c.is_zero(); }))
            continue;
        ProjPoint p(x);
        CHECK(W.limit0(p) == extremal(w, p, true));
        CHECK(W.limitinf(p) == extremal(w, p, false));
        CHECK(W.is_fixed(W.limit0(p)));
        CHECK(W.act(gen::nonzero_gaussian(rng), W.limit0(p)) == W.limit0(p));
        const Scalar t = gen::nonzero_gaussian(rng);
        CHECK(W.orbit_equivalent(p, W.act(t, p)));
        CHECK(W.limit0(W.act(t, p)) == W.limit0(p));
    }
}

TEST_CASE("orbit equivalence over the algebraic closure", "[gm]") {
    WeightedAction W({0, 1, 2});
    CHECK(W.orbit_equivalent(pt({1, 1, 1}), pt({1, 2, 4})));
    CHECK_FALSE(W.orbit_equivalent(pt({1, 1, 1}), pt({1, 2, 3})));
    CHECK_FALSE(W.orbit_equivalent(pt({1, 1, 0}), pt({1, 1, 1})));
    WeightedAction even({0, 2});
    CHECK(even.orbit_equivalent(pt({1, 1}), pt({1, -1})));
    CHECK(even.orbit_equivalent(pt({1, 1}), pt({1, 2})));
    WeightedAction flat({1, 1});
    CHECK_FALSE(flat.orbit_equivalent(pt({1, 1}), pt({1, 2})));
}

TEST_CASE("component order", "[gm]") {
    WeightedAction W({0, 1, 2}, Rational(-1, 2));
    ComponentOrder total = W.comp_order();
    CHECK(total.less_equal(0, 2));
    CHECK_FALSE(total.less_equal(2, 0));
    ComponentOrder witnessed = W.comp_order(std::vector<ProjPoint>{pt({1, 0, 1})});
    CHECK(witnessed.less_equal(0, 2));
    CHECK_FALSE(witnessed.less_equal(0, 1));
    CHECK(witnessed.less_equal(1, 1));
}

TEST_CASE("invariant monomials against enumeration", "[gm][property]") {
    for (int a = -2; a <= 3; ++a)
        for (int d = 0; d <= 4; ++d) {
            WeightedAction W({0, 1, 2}, Rational(a));
            std::vector<std::vector<int>> want;
            for (int i = 0; i <= d; ++i)
                for (int j = 0; i + j <= d; ++j) {
                    const int k = d - i - j;
                    if (j + 2 * k == a * d)
                        want.push_back({i, j, k});
                }
            std::sort(want.begin(), want.end());
            CHECK(W.invariant_monomials(d) == want);
        }
    CHECK(WeightedAction({0, 1, 2}, Rational(1)).invariant_monomials(2) == std::vector<std::vector<int>>{{0, 2, 0}, {1, 0, 1}});
    CHECK(WeightedAction({0, 1}, Rational(1, 2)).invariant_monomials(1).empty());
}

TEST_CASE("arc through the quotient", "[gm][arc]") {
    WeightedAction W({0, 1, 2}, Rational(-1, 2));
    Arc arc({zmono(0), zmono(1), zmono(3)});
    NewtonProfile prof = newton_limits(W, arc);
    REQUIRE(prof.breakpoints.size() == 2);
    CHECK(prof.breakpoints[0].epsilon == 1);
    CHECK(prof.breakpoints[0].landing == pt({1, 1, 0}));
    CHECK(prof.breakpoints[1].epsilon == 2);
    CHECK(prof.breakpoints[1].landing == pt({0, 1, 1}));
    GaugeChoice g = choose_gauge(W, arc);
    CHECK(g.epsilon == 1);
    CHECK(W.in_U(g.landing));
    GaugeChoice shifted = choose_gauge(WeightedAction({0, 1, 2}, Rational(-3, 2)), arc);
    CHECK(shifted.epsilon == 2);
    CHECK(newton_limits(WeightedAction({0, 2}, Rational(-1, 2)), Arc({zmono(0), zmono(1)})).breakpoints[0].epsilon == Rational(1, 2));
}

TEST_CASE("arc at a fixed point has no breakpoints", "[gm][arc]") {
    WeightedAction W({0, 1, 2}, Rational(-1, 2));
    NewtonProfile prof = newton_limits(W, Arc({zmono(0), Laurent1<Scalar>(), Laurent1<Scalar>()}));
    CHECK(prof.breakpoints.empty());
    REQUIRE(prof.intervals.size() == 1);
    CHECK(prof.intervals[0].landing == pt({1, 0, 0}));
}

TEST_CASE("newton profile against direct valuations", "[gm][arc][property]") {
    gen::Rng rng(62);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = gen::uniform(rng, 1, 4);
        std::vector<int> w(n);
        for (auto &x : w)
            x = static_cast<int>(gen::uniform(rng, -2, 3));
        WeightedAction W(w, Rational(-1, 2));
        Arc arc = random_arc(rng, n);
        NewtonProfile prof = newton_limits(W, arc);
        REQUIRE(prof.intervals.size() == prof.breakpoints.size() + 1);
        for (std::size_t k = 0; k < prof.intervals.size(); ++k) {
            const auto &iv = prof.intervals[k];
            Rational probe = iv.lo && iv.hi ? (*iv.lo + *iv.hi) / 2 : iv.lo ? *iv.lo + 1 : iv.hi ? *iv.hi - 1 : Rational(0);
            CHECK(landing_oracle(w, arc, probe) == iv.landing);
            CHECK(W.component_of(iv.landing) == iv.weight);
            if (k + 1 < prof.intervals.size())
                CHECK(iv.weight < prof.intervals[k + 1].weight);
        }
        for (const auto &b : prof.breakpoints)
            CHECK(landing_oracle(w, arc, b.epsilon) == b.landing);
    }
}

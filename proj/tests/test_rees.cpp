#include "support.hpp"

using namespace support;

namespace {

FilteredSpace filtration(std::size_t n, int p_min, const std::vector<std::vector<std::vector<Scalar>>> &steps) {
    std::vector<Subspace> s;
    for (const auto &b : steps)
        s.push_back(Subspace::span(n, b));
    return FilteredSpace(n, p_min, s);
}

// Nested chain V = F^{p_min} > ... obtained by dropping random rows.
FilteredSpace random_filtration(gen::Rng &rng) {
    const std::size_t n = gen::uniform(rng, 1, 4);
    const int p_min = static_cast<int>(gen::uniform(rng, -2, 2));
    ScalarMatrix basis = gen::invertible_matrix(rng, n);
    std::vector<Subspace> steps{Subspace::whole(n)};
    std::size_t k = n;
    while (k > 0 && steps.size() < 5) {
        k -= gen::uniform(rng, 0, std::min<long>(2, static_cast<long>(k)));
        std::vector<std::vector<Scalar>> rows;
        for (std::size_t i = 0; i < k; ++i)
            rows.push_back(basis.row(i));
        steps.push_back(Subspace::span(n, rows));
    }
    return FilteredSpace(n, p_min, steps);
}

// Graded dimensions straight from the filtration.
std::map<int, std::size_t> graded_dims(const FilteredSpace &fs) {
    std::map<int, std::size_t> g;
    for (int p = fs.p_min(); p <= fs.p_max(); ++p)
        if (const std::size_t d = fs.at(p).dim() - fs.at(p + 1).dim())
            g[p] = d;
    return g;
}

} // namespace

TEST_CASE("trivial filtration has weight zero", "[rees]") {
    ReesModule r = build_rees(FilteredSpace(3, 0, {Subspace::whole(3)}));
    CHECK(r.weights == std::vector<int>{0, 0, 0});
}

TEST_CASE("full flag in dimension two", "[rees]") {
    FilteredSpace fs = filtration(2, 0, {{vec({1, 0}), vec({0, 1})}, {vec({1, 0})}});
    ReesModule r = build_rees(fs);
    std::vector<int> w = r.weights;
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<int>{0, 1});
    CHECK(fiber_at_zero(r) == std::map<int, std::size_t>{{0, 1}, {1, 1}});
    CHECK(fiber_at_one(r).dim() == 2);
}

TEST_CASE("shifted line", "[rees]") {
    ReesModule r = build_rees(FilteredSpace(1, 3, {Subspace::whole(1)}));
    CHECK(r.weights == std::vector<int>{3});
}

TEST_CASE("filtration steps must nest", "[rees]") {
    CHECK_THROWS_AS(filtration(2, 0, {{vec({1, 0})}}), PreconditionError);
    CHECK_THROWS_AS(filtration(2, 0, {{vec({1, 0}), vec({0, 1})}, {vec({1, 0})}, {vec({0, 1})}}), PreconditionError);
}

TEST_CASE("rees module round trip", "[rees][property]") {
    gen::Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        FilteredSpace fs = random_filtration(rng);
        ReesModule r = build_rees(fs);
        FilteredSpace back = recover_filtration(r);
        for (int p = fs.p_min() - 1; p <= fs.p_max() + 1; ++p) {
            CHECK(back.at(p).contains(fs.at(p)));
            CHECK(fs.at(p).contains(back.at(p)));
        }
        CHECK(fiber_at_zero(r) == graded_dims(fs));
        CHECK(fiber_at_one(r).dim() == fs.dim());
    }
}

TEST_CASE("griffiths transversality", "[rees]") {
    FilteredSpace flag = filtration(2, 0, {{vec({1, 0}), vec({0, 1})}, {vec({1, 0})}});
    ScalarMatrix nilp = ScalarMatrix::from_rows({{Scalar(0), Scalar(0)}, {Scalar(1), Scalar(0)}});
    CHECK(griffiths_check(flag, {nilp}));
    FilteredSpace three = filtration(3, 0, {{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}, {vec({1, 0, 0}), vec({0, 1, 0})}, {vec({1, 0, 0})}});
    ScalarMatrix jump(3, 3);
    jump(2, 0) = Scalar(1);
    CHECK_FALSE(griffiths_check(three, {jump}));
    CHECK(griffiths_check(three, {ScalarMatrix(3, 3)}));
}

TEST_CASE("merging adjacent steps preserves transversality", "[rees][property]") {
    gen::Rng rng(22);
    int transversal = 0;
    for (int trial = 0; trial < 300; ++trial) {
        FilteredSpace fs = random_filtration(rng);
        const std::size_t n = fs.dim();
        ScalarMatrix conn(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (gen::uniform(rng, 0, 2) == 0)
                    conn(i, j) = gen::gaussian(rng);
        if (!griffiths_check(fs, {conn}))
            continue;
        ++transversal;
        const int k = static_cast<int>(gen::uniform(rng, fs.p_min(), fs.p_max()));
        std::vector<Subspace> merged;
        for (int p = fs.p_min(); p <= fs.p_max(); ++p)
            merged.push_back(p < k ? fs.at(p) : fs.at(p + 1));
        if (merged.front().dim() != n)
            continue;
        CHECK(griffiths_check(FilteredSpace(n, fs.p_min(), merged), {conn}));
    }
    CHECK(transversal > 20);
}

TEST_CASE("gluing a line with its conjugate", "[rees][purity]") {
    gen::Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const Scalar c = trial % 4 == 0 ? Scalar(gen::rational(rng)) : gen::gaussian(rng);
        FilteredSpace fs = filtration(2, 0, {{vec({1, 0}), vec({0, 1})}, {vec({1, c})}});
        GluedBundle g = rees_p1(fs);
        // opposed to its conjugate exactly when the slope is not real
        const bool opposed = c != c.conj();
        CHECK(g.purity.pure == opposed);
        CHECK(g.purity.splitting == (opposed ? std::vector<int>{1, 1} : std::vector<int>{2, 0}));
        if (opposed)
            CHECK(g.purity.weight == 1);
    }
}

TEST_CASE("glued line bundles have degree p + q", "[rees][purity]") {
    for (int p = -2; p <= 2; ++p)
        for (int q = -2; q <= 2; ++q) {
            GluedBundle g = rees_p1(FilteredSpace(1, p, {Subspace::whole(1)}), FilteredSpace(1, q, {Subspace::whole(1)}));
            CHECK(g.purity.splitting == std::vector<int>{p + q});
            CHECK(g.purity.weight == p + q);
        }
}

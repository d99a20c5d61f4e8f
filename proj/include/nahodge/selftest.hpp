#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nahodge/nahodge.hpp"
#include "nahodge/random.hpp"

/// The property suite behind `nahodge selftest` and the acceptance runner.
namespace nahodge::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

/// Collects failed checks; the first few messages are kept for the report.
class Tally {
  public:
    void check(bool ok, const std::string &what) {
        ++checks_;
        if (ok)
            return;
        ++failures_;
        if (notes_.size() < 3)
            notes_.push_back(what);
    }
    std::size_t failures() const { return failures_; }
    std::string summary() const {
        std::ostringstream o;
        o << checks_ << " checks, " << failures_ << " failures";
        for (const auto &n : notes_)
            o << "; " << n;
        return o.str();
    }

  private:
    std::size_t checks_ = 0, failures_ = 0;
    std::vector<std::string> notes_;
};

inline CriterionResult run(int id, std::string name, const std::function<void(Tally &)> &body) {
    Tally t;
    CriterionResult r{id, std::move(name), false, {}};
    try {
        body(t);
        r.passed = t.failures() == 0;
        r.detail = t.summary();
    } catch (const std::exception &e) {
        r.detail = t.summary() + "; aborted: " + e.what();
    }
    return r;
}

inline std::vector<int> ones(std::size_t n, int v = 1) { return std::vector<int>(n, v); }

inline Subspace line(const std::vector<Scalar> &v) { return Subspace::span(v.size(), {v}); }

inline QuaternionicSpace random_quaternionic(gen::Rng &rng, std::size_t r) {
    // J' = M^{-1} J conj(M) is the standard structure in the basis M
    ScalarMatrix M = gen::invertible_matrix(rng, 2 * r);
    ScalarMatrix jm = inverse(M) * QuaternionicSpace::standard(r).j_matrix() * conj(M);
    return QuaternionicSpace(r, jm);
}

inline Laurent1<RatFun> disk_scalar(const Scalar &c0, const Scalar &c1, int zexp) {
    SPoly p(c0);
    p.add_term(1, c1);
    return Laurent1<RatFun>::monomial(zexp, RatFun(p));
}

/// Unimodular over K[z^{z_sign}] with s-polynomial coefficients and constant determinant.
inline DiskMatrix disk_unimodular(gen::Rng &rng, std::size_t n, int z_sign) {
    DiskMatrix m = DiskMatrix::identity(n, Laurent1<RatFun>(), z_one<RatFun>());
    for (int k = 0; k < 2; ++k) {
        const std::size_t i = gen::uniform(rng, 0, n - 1);
        std::size_t j = gen::uniform(rng, 0, n - 2);
        if (j >= i)
            ++j;
        auto f = disk_scalar(gen::gaussian(rng, 2, 1), gen::gaussian(rng, 1, 1), z_sign * static_cast<int>(gen::uniform(rng, 0, 1)));
        for (std::size_t c = 0; c < n; ++c)
            m(i, c) += f * m(j, c);
    }
    return m;
}

/// Special fiber of type (1, 0.., -1) smoothed to a balanced generic fiber by c*s^k.
inline DiskFamily gap_two_family(gen::Rng &rng, std::size_t n) {
    DiskMatrix T = DiskMatrix::identity(n, Laurent1<RatFun>(), z_one<RatFun>());
    const std::size_t top = 0, bottom = n - 1;
    T(top, top) = z_power<RatFun>(1);
    T(bottom, bottom) = z_power<RatFun>(-1);
    const int k = static_cast<int>(gen::uniform(rng, 1, 2));
    T(top, bottom) = Laurent1<RatFun>(RatFun(SPoly::monomial(k, gen::nonzero_gaussian(rng, 2, 2))));
    return DiskFamily(disk_unimodular(rng, n, -1) * T * disk_unimodular(rng, n, 1));
}

} // namespace detail

/// Rees roundtrip on random filtrations.
inline CriterionResult rees_roundtrip(std::uint64_t seed, int trials = 200) {
    return detail::run(1, "Rees roundtrip", [&](detail::Tally &t) {
        gen::Rng rng(seed);
        for (int trial = 0; trial < trials; ++trial) {
            const std::size_t n = gen::uniform(rng, 1, 8), len = gen::uniform(rng, 1, 6);
            ScalarMatrix basis = gen::invertible_matrix(rng, n);
            std::vector<Subspace> steps;
            std::size_t d = n;
            for (std::size_t k = 0; k < len; ++k) {
                if (k > 0)
                    d = gen::uniform(rng, 0, d);
                // a spanning set of random combinations of the first d basis rows
                std::vector<std::vector<Scalar>> vs;
                for (std::size_t c = 0; c < d + (d > 0 ? 1 : 0); ++c) {
                    std::vector<Scalar> v(n);
                    for (std::size_t j = 0; j < d; ++j) {
                        const Scalar coef = c < d && j == c ? Scalar(1) : (c < d ? Scalar(0) : gen::gaussian(rng));
                        for (std::size_t i = 0; i < n; ++i)
                            v[i] += coef * basis(j, i);
                    }
                    vs.push_back(v);
                }
                steps.push_back(Subspace::span(n, vs));
            }
            FilteredSpace fs(n, static_cast<int>(gen::uniform(rng, -3, 3)), steps);
            ReesModule r = build_rees(fs);
            t.check(recover_filtration(r) == fs, "roundtrip failed at trial " + std::to_string(trial));
            std::size_t graded = 0;
            for (const auto &[w, c] : fiber_at_zero(r))
                graded += c;
            t.check(graded == n && fiber_at_one(r).dim() == n, "fiber dimensions differ at trial " + std::to_string(trial));
        }
    });
}

/// Purity read off the splitting type.
inline CriterionResult purity_as_splitting(std::uint64_t) {
    return detail::run(2, "Purity as splitting", [&](detail::Tally &t) {
        const Scalar i = Scalar::i();
        FilteredSpace transverse(2, 0, {Subspace::whole(2), detail::line({Scalar(1), i})});
        GluedBundle g = rees_p1(transverse);
        t.check(g.bundle.splitting_type() == std::vector<int>{1, 1} && g.purity.pure && g.purity.weight == 1,
                "transverse case is not pure of weight 1");
        FilteredSpace degenerate(2, 0, {Subspace::whole(2), detail::line({Scalar(1), Scalar(0)})});
        GluedBundle h = rees_p1(degenerate);
        t.check(h.bundle.splitting_type() == std::vector<int>{2, 0} && !h.purity.pure, "degenerate case is not (2,0)");
        for (std::size_t r = 1; r <= 3; ++r) {
            TwistorModel m = twistor_bundle(QuaternionicSpace::standard(r));
            t.check(m.bundle.splitting_type() == detail::ones(2 * r), "twistor bundle is not (1,...,1) for r = " + std::to_string(r));
            t.check(m.bundle.h0_twist(0) == 4 * r, "twistor h0 differs from 4r for r = " + std::to_string(r));
        }
    });
}

/// Exact identities of the twistor family of complex structures.
inline CriterionResult twistor_identities(std::uint64_t seed) {
    return detail::run(3, "Twistor structure identities", [&](detail::Tally &t) {
        gen::Rng rng(seed);
        for (std::size_t r = 1; r <= 3; ++r) {
            QuaternionicSpace Q = r == 1 ? QuaternionicSpace::standard(1) : detail::random_quaternionic(rng, r);
            t.check(Q.structure_at(Scalar(0)) == Q.I(), "I_0 != I");
            t.check(Q.structure_at(Scalar(1)) == Q.J(), "I_1 != J");
            t.check(Q.structure_at(Scalar::i()) == Q.K(), "I_i != K");
        }
        QuaternionicSpace Q = detail::random_quaternionic(rng, 2);
        const RealLinearOp minus_one = -RealLinearOp::identity(Q.dim());
        for (int k = 0; k < 100; ++k) {
            SpherePoint p = stereographic(gen::gaussian(rng, 5, 4));
            RealLinearOp op = Q.structure_xyz(p);
            t.check(p.on_sphere() && op * op == minus_one, "(xI+yJ+zK)^2 != -1");
        }
        for (int k = 0; k < 20; ++k) {
            const Scalar lam = gen::nonzero_gaussian(rng);
            const Scalar anti = -(lam.conj().inverse());
            t.check(Q.structure_at(anti) == -Q.structure_at(lam), "antipodal conjugacy fails");
        }
        for (int k = 0; k < 20; ++k) {
            const Scalar lam = gen::gaussian(rng);
            const RealLinearOp direct = Q.structure_at(lam);
            t.check(Q.structure_conjugated(lam) == direct, "(u,v) gauge form disagrees with I_lambda");
            t.check(Q.structure_conjugated_realified(lam) == direct.realified(), "1 - i lambda J form disagrees with I_lambda");
        }
    });
}

/// Uniqueness of sigma-invariant sections and vanishing of quaternionic forms.
inline CriterionResult invariant_sections(std::uint64_t seed) {
    return detail::run(4, "Sigma-invariant section uniqueness", [&](detail::Tally &t) {
        gen::Rng rng(seed);
        std::vector<QuaternionicSpace> spaces;
        for (std::size_t r = 1; r <= 3; ++r) {
            spaces.push_back(detail::random_quaternionic(rng, r));
            t.check(spaces.back().invariant_section_dimension() == 4 * r, "invariant sections do not have real dimension 4r");
        }
        for (int k = 0; k < 50; ++k) {
            const QuaternionicSpace &Q = spaces[k % 3];
            const std::vector<Scalar> v = gen::gaussian_vector(rng, Q.dim());
            const Scalar lam0 = k % 10 == 0 ? Scalar(0) : gen::gaussian(rng);
            SectionO1 s = Q.invariant_section_through(v, lam0);
            t.check(s.at(lam0) == v && Q.sigma(s) == s, "invariant section through a point is wrong");
            t.check(Q.evaluation_rank(lam0) == 4 * Q.rank(), "evaluation is not bijective on invariant sections");
        }
        for (std::size_t r = 1; r <= 2; ++r)
            for (std::size_t r2 = 1; r2 <= 2; ++r2) {
                t.check(quaternionic_sff_space(r, r2) == 0,
                        "quaternionic forms do not vanish for (" + std::to_string(r) + "," + std::to_string(r2) + ")");
                t.check(quaternionic_sff_space(r, r2, false) > 0, "complex-only control is zero");
            }
    });
}

/// The rank-one sigma' identity and the invariant-section classifier.
inline CriterionResult rank_one_sigma(std::uint64_t seed) {
    return detail::run(5, "Rank-1 sigma' identity", [&](detail::Tally &t) {
        gen::Rng rng(seed);
        auto random_line = [&](std::size_t g) {
            return HarmonicLine(gen::gaussian_vector(rng, g), gen::gaussian_vector(rng, g));
        };
        for (int k = 0; k < 100; ++k) {
            HarmonicLine h = random_line(gen::uniform(rng, 1, 5));
            t.check(sigma_defect(PolySection::of(h)).empty(), "prefered section is not sigma'-equivariant");
            const Scalar lam = gen::nonzero_gaussian(rng);
            t.check(sigma_prime(prefered_section(h, lam)) == prefered_section(h, -(lam.conj().inverse())),
                    "sigma'(pref(h, lambda)) != pref(h, -1/conj(lambda))");
        }
        for (int k = 0; k < 500; ++k) {
            const std::size_t g = gen::uniform(rng, 1, 3);
            HarmonicLine h = random_line(g);
            PolySection cand = PolySection::of(h);
            const int mode = static_cast<int>(gen::uniform(rng, 0, 3));
            if (mode == 1) {
                // perturb one coefficient of degree <= 4
                auto &coord = gen::uniform(rng, 0, 1) ? cand.beta : cand.eta;
                coord[gen::uniform(rng, 0, g - 1)].add_term(static_cast<int>(gen::uniform(rng, 0, 4)), gen::nonzero_gaussian(rng));
            } else if (mode >= 2) {
                for (auto *coords : {&cand.beta, &cand.eta})
                    for (auto &p : *coords) {
                        p = Laurent1<Scalar>();
                        for (int e = 0, d = static_cast<int>(gen::uniform(rng, 0, 4)); e <= d; ++e)
                            p.add_term(e, gen::gaussian(rng));
                    }
            }
            // oracle: a candidate is prefered iff it is the section of its own lambda = 0 data
            std::vector<Scalar> nu, th;
            for (std::size_t c = 0; c < g; ++c) {
                nu.push_back(cand.beta[c].coeff(0));
                th.push_back(cand.eta[c].coeff(0));
            }
            PolySection own = PolySection::of(HarmonicLine(nu, th));
            const bool prefered = own.beta == cand.beta && own.eta == cand.eta;
            Classification cl = classify_invariant_section(cand);
            t.check(cl.verdict != SectionVerdict::InvariantNotPrefered, "found an invariant non-prefered section");
            t.check((cl.verdict == SectionVerdict::Prefered) == prefered, "classifier disagrees with the oracle");
            if (mode == 0)
                t.check(cl.harmonic && *cl.harmonic == h, "harmonic data not recovered");
        }
    });
}

/// Betti numbers, jump ideals and subtorus containment.
inline CriterionResult jump_loci_checks(std::uint64_t seed) {
    return detail::run(6, "Jump loci", [&](detail::Tally &t) {
        gen::Rng rng(seed);
        const auto &vals = character_sample_values();
        for (int k = 0; k < 500; ++k) {
            const std::size_t a = gen::uniform(rng, 1, 2), l = gen::uniform(rng, 1, 3), m = gen::uniform(rng, 1, 3);
            LaurentMatrix A(l, m, LaurentPoly(a));
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    for (long terms = gen::uniform(rng, 0, 2); terms > 0; --terms) {
                        std::vector<int> e(a);
                        for (auto &x : e)
                            x = static_cast<int>(gen::uniform(rng, -1, 1));
                        A(i, j) += LaurentPoly::monomial(e, Scalar(gen::uniform(rng, -2, 2)));
                    }
            CWPresentation P(a, A);
            std::vector<Scalar> rho(a);
            do
                for (auto &c : rho)
                    c = vals[gen::uniform(rng, 0, vals.size() - 1)];
            while (is_trivial_character(rho));
            BettiDims d = betti_dims(P, rho);
            t.check(static_cast<long>(d.h2) - static_cast<long>(d.h3) == static_cast<long>(m) - static_cast<long>(l),
                    "h2 - h3 != m - l");
            for (std::size_t kk = 1; kk <= m; ++kk)
                t.check(jump_ideal(P, kk) == jump_ideal_h3(P, static_cast<long>(kk + l) - static_cast<long>(m)),
                        "degree-2 and degree-3 jump ideals differ");
        }
        LaurentMatrix A(1, 1, LaurentPoly::variable(2, 0) - LaurentPoly::constant(2, Scalar(1)));
        CWPresentation P(2, A);
        const std::vector<std::vector<int>> along_t2{{0}, {1}};
        t.check(contains_subtorus(P, 1, {{Scalar(1), Scalar(1)}, along_t2, 1}), "{t1 = 1} is not contained");
        t.check(!contains_subtorus(P, 1, {{Scalar(-1), Scalar(1)}, along_t2, 1}), "{t1 = -1} is contained");
        t.check(!contains_subtorus(P, 1, {{Scalar::i(), Scalar(1)}, along_t2, 1}), "{t1 = i} is contained");
    });
}

/// G_m geometry on weights (0,1,2) with shift -1/2.
inline CriterionResult gm_geometry(std::uint64_t seed) {
    return detail::run(7, "G_m geometry", [&](detail::Tally &t) {
        gen::Rng rng(seed);
        WeightedAction W({0, 1, 2}, Rational(-1, 2));
        auto pt = [](int a, int b, int c) { return ProjPoint({Scalar(a), Scalar(b), Scalar(c)}); };
        Decomposition d = W.decompose();
        t.check(d.plus == std::vector<int>{0} && d.minus == std::vector<int>{1, 2}, "decomposition differs");
        t.check(W.membership(pt(1, 1, 0)) == Membership::InU, "[1:1:0] is not in U");
        t.check(W.membership(pt(1, 0, 0)) == Membership::InYPlus, "[1:0:0] is not in Y+");
        t.check(W.membership(pt(0, 1, 1)) == Membership::InYMinus, "[0:1:1] is not in Y-");

        Arc arc({z_one<Scalar>(), z_power<Scalar>(1), z_power<Scalar>(3)});
        NewtonProfile prof = newton_limits(W, arc);
        t.check(prof.intervals.size() == 3 && prof.breakpoints.size() == 2, "envelope has the wrong shape");
        if (prof.intervals.size() == 3 && prof.breakpoints.size() == 2) {
            t.check(prof.intervals[0].weight == 0 && prof.intervals[1].weight == 1 && prof.intervals[2].weight == 2,
                    "interval components differ");
            t.check(prof.breakpoints[0].epsilon == 1 && prof.breakpoints[0].landing == pt(1, 1, 0), "first breakpoint differs");
            t.check(prof.breakpoints[1].epsilon == 2 && prof.breakpoints[1].landing == pt(0, 1, 1), "second breakpoint differs");
        }
        GaugeChoice gc = choose_gauge(W, arc);
        t.check(gc.epsilon == 1 && gc.landing == pt(1, 1, 0) && W.in_U(gc.landing), "gauge choice differs");

        // Y+ and Y- on a 10^3 grid, computed from the limits directly
        const std::vector<Scalar> grid = {Scalar(0),  Scalar(1),          Scalar(-1), Scalar(2),          Scalar(Rational(1, 2)),
                                          Scalar(3),  Scalar(Rational(-2, 3)), Scalar(-3), Scalar(Rational(5, 2)), Scalar(7)};
        auto in_plus = [&](int w) { return std::find(d.plus.begin(), d.plus.end(), w) != d.plus.end(); };
        for (const auto &x0 : grid)
            for (const auto &x1 : grid)
                for (const auto &x2 : grid) {
                    if (x0.is_zero() && x1.is_zero() && x2.is_zero())
                        continue;
                    ProjPoint x({x0, x1, x2});
                    const bool yp = in_plus(W.component_of(W.limitinf(x)));
                    const bool ym = !in_plus(W.component_of(W.limit0(x)));
                    t.check(!(yp && ym), "Y+ and Y- meet at " + x.to_string());
                    const Membership mem = W.membership(x);
                    t.check(mem == (yp ? Membership::InYPlus : ym ? Membership::InYMinus : Membership::InU),
                            "membership disagrees with the limits at " + x.to_string());
                }

        // equivalence-relation laws on sampled U-points
        std::vector<ProjPoint> us;
        while (us.size() < 100) {
            ProjPoint x({gen::gaussian(rng), gen::gaussian(rng), gen::gaussian(rng)});
            if (x.coords() != std::vector<Scalar>(3, Scalar(0)) && W.in_U(x))
                us.push_back(us.size() % 2 && !us.empty() ? W.act(gen::nonzero_gaussian(rng), us.back()) : x);
        }
        for (std::size_t k = 0; k < us.size(); ++k) {
            const ProjPoint &x = us[k], &y = us[(k + 1) % us.size()], &z = us[(k + 2) % us.size()];
            t.check(W.orbit_equivalent(x, x), "orbit equivalence is not reflexive");
            const bool xy = W.orbit_equivalent(x, y), yz = W.orbit_equivalent(y, z);
            t.check(xy == W.orbit_equivalent(y, x), "orbit equivalence is not symmetric");
            if (xy && yz)
                t.check(W.orbit_equivalent(x, z), "orbit equivalence is not transitive");
            t.check(W.orbit_equivalent(x, W.act(gen::nonzero_gaussian(rng), x)), "a point is not equivalent to its translate");
        }
    });
}

/// Langton reduction on the fixtures and on random gap-2 families.
inline CriterionResult langton_checks(std::uint64_t seed, int trials = 50) {
    return detail::run(8, "Langton reduction", [&](detail::Tally &t) {
        auto family = [](int deg, int s_pow) {
            DiskMatrix T(2, 2, Laurent1<RatFun>());
            T(0, 0) = z_power<RatFun>(deg);
            T(0, 1) = Laurent1<RatFun>(RatFun::s_power(s_pow));
            T(1, 1) = z_power<RatFun>(-deg);
            return DiskFamily(T);
        };
        auto audit = [&](const DiskFamily &F, const std::string &label) {
            const std::vector<int> generic = generic_splitting(F);
            DiskFamily cur = F;
            std::vector<int> type = special_splitting(cur);
            std::size_t steps = 0;
            while (!is_balanced(type) && steps < 64) {
                LangtonStep s = langton_step(cur);
                t.check(verify_equivalence(cur, s.result, s.certificate), label + ": certificate does not re-multiply");
                t.check(generic_splitting(s.result) == generic, label + ": generic splitting changed");
                std::vector<int> next = special_splitting(s.result);
                t.check(next < type, label + ": special type did not decrease");
                cur = s.result;
                type = next;
                ++steps;
            }
            t.check(is_balanced(type), label + ": special fiber not balanced");
            return steps;
        };

        LangtonResult one = langton_reduce(family(1, 1));
        t.check(one.trail.size() == 2 && one.trail.back().special_type == std::vector<int>{0, 0},
                "[[z,s],[0,1/z]] does not reduce in one step to (0,0)");
        audit(family(1, 1), "[[z,s],[0,1/z]]");

        LangtonResult two = langton_reduce(family(2, 1));
        t.check(is_balanced(two.trail.back().special_type), "[[z^2,s],[0,z^-2]] does not end balanced");
        for (std::size_t k = 1; k < two.trail.size(); ++k)
            t.check(two.trail[k].special_type < two.trail[k - 1].special_type, "trail is not strictly decreasing");
        audit(family(2, 1), "[[z^2,s],[0,z^-2]]");
        t.check(langton_reduce(two.result).trail.size() == 1, "re-running on the reduced family is not a no-op");

        gen::Rng rng(seed);
        for (int k = 0; k < trials; ++k) {
            const std::size_t n = 2 + k % 2;
            DiskFamily F = detail::gap_two_family(rng, n);
            std::vector<int> sp = special_splitting(F);
            t.check(sp.front() - sp.back() == 2, "random family does not have gap 2");
            audit(F, "random family " + std::to_string(k));
        }
    });
}

/// Construct-then-recover for random Birkhoff products.
inline CriterionResult birkhoff_consistency(std::uint64_t seed, int trials = 200) {
    return detail::run(9, "Birkhoff self-consistency", [&](detail::Tally &t) {
        gen::Rng rng(seed);
        for (int k = 0; k < trials; ++k) {
            const std::size_t n = gen::uniform(rng, 1, 4);
            std::vector<int> a(n), neg(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = static_cast<int>(gen::uniform(rng, -3, 3));
                neg[i] = -a[i];
            }
            ZMatrix<Scalar> G = gen::unimodular(rng, n, -1) * z_diagonal<Scalar>(neg) * gen::unimodular(rng, n, 1);
            P1Bundle<Scalar> B(G);
            std::vector<int> expect = a;
            std::sort(expect.rbegin(), expect.rend());
            std::vector<int> got = B.splitting_type();
            t.check(got == expect, "splitting type not recovered at trial " + std::to_string(k));
            int sum = 0;
            for (int x : got)
                sum += x;
            t.check(sum == -B.det_exponent(), "determinant-sum identity fails at trial " + std::to_string(k));
        }
    });
}

inline std::vector<CriterionResult> run_all(std::uint64_t seed) {
    return {rees_roundtrip(seed),     purity_as_splitting(seed), twistor_identities(seed),
            invariant_sections(seed), rank_one_sigma(seed),      jump_loci_checks(seed),
            gm_geometry(seed),        langton_checks(seed),      birkhoff_consistency(seed)};
}

} // namespace nahodge::selftest

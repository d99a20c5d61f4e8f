#pragma once

#include <optional>
#include <vector>

#include "nahodge/birkhoff.hpp"
#include "nahodge/errors.hpp"
#include "nahodge/matrix.hpp"
#include "nahodge/scalar.hpp"

namespace nahodge {

/// Real-linear operator v -> lin*v + anti*conj(v) on Scalar^d.
struct RealLinearOp {
    ScalarMatrix lin, anti;

    static RealLinearOp identity(std::size_t d) { return {ScalarMatrix::identity(d), ScalarMatrix(d, d)}; }
    std::size_t dim() const { return lin.rows(); }

    std::vector<Scalar> apply(const std::vector<Scalar> &v) const {
        std::vector<Scalar> cv(v.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            cv[k] = v[k].conj();
        auto a = lin.apply(v), b = anti.apply(cv);
        for (std::size_t k = 0; k < a.size(); ++k)
            a[k] += b[k];
        return a;
    }

    /// (this o o)
    RealLinearOp then_after(const RealLinearOp &o) const {
        return {lin * o.lin + anti * conj(o.anti), lin * o.anti + anti * conj(o.lin)};
    }
    friend RealLinearOp operator*(const RealLinearOp &a, const RealLinearOp &b) { return a.then_after(b); }
    friend RealLinearOp operator+(const RealLinearOp &a, const RealLinearOp &b) {
        return {a.lin + b.lin, a.anti + b.anti};
    }
    friend RealLinearOp operator-(const RealLinearOp &a, const RealLinearOp &b) {
        return {a.lin - b.lin, a.anti - b.anti};
    }
    RealLinearOp operator-() const { return {-lin, -anti}; }
    /// The operator followed by multiplication with the complex scalar c.
    friend RealLinearOp operator*(const Scalar &c, const RealLinearOp &a) { return {c * a.lin, c * a.anti}; }
    friend bool operator==(const RealLinearOp &a, const RealLinearOp &b) { return a.lin == b.lin && a.anti == b.anti; }

    /// Matrix on R^{2d} in coordinates (Re v, Im v).
    RationalMatrix realified() const {
        const std::size_t d = dim();
        RationalMatrix R(2 * d, 2 * d, Rational(0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                require(lin(i, j).is_gaussian() && anti(i, j).is_gaussian(), "realification needs Gaussian entries");
                const Rational ar = lin(i, j).re(), ai = lin(i, j).im();
                const Rational br = anti(i, j).re(), bi = anti(i, j).im();
                R(i, j) = ar + br;
                R(i, d + j) = bi - ai;
                R(d + i, j) = ai + bi;
                R(d + i, d + j) = ar - br;
            }
        return R;
    }
};

inline std::vector<Rational> realify(const std::vector<Scalar> &v) {
    std::vector<Rational> r(2 * v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        require(v[k].is_gaussian(), "realification needs Gaussian entries");
        r[k] = v[k].re();
        r[v.size() + k] = v[k].im();
    }
    return r;
}

inline std::vector<Scalar> complexify(const std::vector<Rational> &r) {
    const std::size_t d = r.size() / 2;
    std::vector<Scalar> v(d);
    for (std::size_t k = 0; k < d; ++k)
        v[k] = Scalar(r[k], r[d + k]);
    return v;
}

/// Point of the unit sphere with rational coordinates.
struct SpherePoint {
    Rational x, y, z;
    bool on_sphere() const { return x * x + y * y + z * z == 1; }
    friend bool operator==(const SpherePoint &a, const SpherePoint &b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

/// lambda = u + iv (nullopt = infinity) to the sphere.
inline SpherePoint stereographic(const std::optional<Scalar> &lambda) {
    if (!lambda)
        return {Rational(-1), Rational(0), Rational(0)};
    require(lambda->is_gaussian(), "stereographic coordinate must be Gaussian-rational");
    const Rational u = lambda->re(), v = lambda->im();
    const Rational n2 = u * u + v * v, den = 1 + n2;
    return {(1 - n2) / den, 2 * u / den, 2 * v / den};
}

inline std::optional<Scalar> inverse_stereographic(const SpherePoint &p) {
    require(p.on_sphere(), "point is not on the unit sphere");
    if (p.x == -1)
        return std::nullopt;
    const Rational d = 1 + p.x;
    return Scalar(Rational(p.y / d), Rational(p.z / d));
}

/// Section lambda -> a + b*lambda of O(1)^{2r} in the finite chart.
struct SectionO1 {
    std::vector<Scalar> a, b;
    std::vector<Scalar> at(const Scalar &lambda) const {
        std::vector<Scalar> v = a;
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] += lambda * b[k];
        return v;
    }
    friend bool operator==(const SectionO1 &x, const SectionO1 &y) { return x.a == y.a && x.b == y.b; }
};

/// Complex space W = C^{2r} with I = i and antilinear J(v) = J_m conj(v).
class QuaternionicSpace {
  public:
    QuaternionicSpace(std::size_t r, ScalarMatrix jm) : r_(r), jm_(std::move(jm)) {
        require(r_ > 0, "quaternionic rank must be positive");
        require(jm_.rows() == 2 * r_ && jm_.cols() == 2 * r_, "J matrix must be 2r x 2r");
        for (const auto &e : jm_.data())
            require(e.is_gaussian(), "J matrix must have Gaussian-rational entries");
        require(jm_ * conj(jm_) == -ScalarMatrix::identity(2 * r_), "J is not a quaternionic structure: J^2 != -1");
        ensure(K() * K() == -RealLinearOp::identity(dim()), "K^2 != -1");
        ensure(I() * J() == -(J() * I()), "IJ != -JI");
    }

    /// Block-diagonal standard structure with blocks [[0,-1],[1,0]].
    static QuaternionicSpace standard(std::size_t r) {
        ScalarMatrix jm(2 * r, 2 * r);
        for (std::size_t k = 0; k < r; ++k) {
            jm(2 * k, 2 * k + 1) = Scalar(-1);
            jm(2 * k + 1, 2 * k) = Scalar(1);
        }
        return QuaternionicSpace(r, jm);
    }

    std::size_t rank() const { return r_; }
    std::size_t dim() const { return 2 * r_; }
    const ScalarMatrix &j_matrix() const { return jm_; }

    RealLinearOp I() const { return {Scalar::i() * ScalarMatrix::identity(dim()), ScalarMatrix(dim(), dim())}; }
    RealLinearOp J() const { return {ScalarMatrix(dim(), dim()), jm_}; }
    RealLinearOp K() const { return I() * J(); }

    std::vector<Scalar> apply_J(const std::vector<Scalar> &v) const { return J().apply(v); }

    /// xI + yJ + zK.
    RealLinearOp structure_xyz(const SpherePoint &p) const {
        return Scalar(p.x) * I() + Scalar(p.y) * J() + Scalar(p.z) * K();
    }
    /// I_lambda from the stereographic dictionary; lambda = nullopt is infinity.
    RealLinearOp structure_at(const std::optional<Scalar> &lambda) const { return structure_xyz(stereographic(lambda)); }

    /// 1 - uK + vJ for lambda = u + iv.
    RealLinearOp gauge(const Scalar &lambda) const {
        return RealLinearOp::identity(dim()) - Scalar(lambda.re()) * K() + Scalar(lambda.im()) * J();
    }
    /// 1 - i*lambda*J, with i*lambda acting by complex scalar multiplication.
    RealLinearOp gauge_closed_form(const Scalar &lambda) const {
        return RealLinearOp::identity(dim()) - (Scalar::i() * lambda) * J();
    }
    /// (1 - uK + vJ)^{-1} I (1 - uK + vJ), using (1 + Q)^{-1} = (1 - Q)/(1 + |lambda|^2).
    RealLinearOp structure_conjugated(const Scalar &lambda) const {
        RealLinearOp q = gauge(lambda);
        RealLinearOp one = RealLinearOp::identity(dim());
        const Rational n2 = lambda.re() * lambda.re() + lambda.im() * lambda.im();
        RealLinearOp qinv = Scalar(Rational(1 / (1 + n2))) * (one + one - q);
        ensure(qinv * q == one, "gauge inverse formula failed");
        return qinv * I() * q;
    }
    /// Same conjugation, with the inverse taken independently on the realified matrix.
    RationalMatrix structure_conjugated_realified(const Scalar &lambda) const {
        RationalMatrix q = gauge_closed_form(lambda).realified();
        return inverse(q) * I().realified() * q;
    }

    SectionO1 sigma(const SectionO1 &s) const {
        std::vector<Scalar> na = apply_J(s.b);
        for (auto &c : na)
            c = -c;
        return {na, apply_J(s.a)};
    }

    /// The sigma-invariant section a + J(a) lambda.
    SectionO1 invariant_section(const std::vector<Scalar> &a) const { return {a, apply_J(a)}; }

    /// Unique sigma-invariant section with value v at lambda0 (nullopt = infinity).
    SectionO1 invariant_section_through(const std::vector<Scalar> &v, const std::optional<Scalar> &lambda0) const {
        require(v.size() == dim(), "vector has the wrong dimension");
        if (!lambda0) {
            // chart at infinity: value is b = J(a)
            auto a = apply_J(v);
            for (auto &c : a)
                c = -c;
            return invariant_section(a);
        }
        // (1 + lambda0 J) a = v as a real-linear system
        RealLinearOp op = RealLinearOp::identity(dim()) + (*lambda0) * J();
        RationalMatrix R = op.realified();
        auto inv = try_inverse(R);
        ensure(inv.has_value(), "invariant-section system is singular");
        auto a = complexify(inv->apply(realify(v)));
        SectionO1 s = invariant_section(a);
        ensure(s.at(*lambda0) == v, "invariant section misses the prescribed value");
        ensure(sigma(s) == s, "constructed section is not sigma-invariant");
        return s;
    }

    /// Real dimension of the fixed space of sigma on pairs (a, b).
    std::size_t invariant_section_dimension() const { return invariant_section_space().size(); }

    /// Real basis (in realified (a, b) coordinates) of the sigma-fixed sections.
    std::vector<std::vector<Rational>> invariant_section_space() const {
        const std::size_t d = dim(), R = 2 * d;
        RationalMatrix S(2 * R, 2 * R, Rational(0));
        for (std::size_t c = 0; c < 2 * R; ++c) {
            std::vector<Rational> e(2 * R, Rational(0));
            e[c] = 1;
            SectionO1 s{complexify({e.begin(), e.begin() + R}), complexify({e.begin() + R, e.end()})};
            SectionO1 t = sigma(s);
            auto ra = realify(t.a), rb = realify(t.b);
            for (std::size_t k = 0; k < R; ++k) {
                S(k, c) = ra[k];
                S(R + k, c) = rb[k];
            }
            S(c, c) -= 1;
        }
        return nullspace(S);
    }

    /// Rank of evaluation at lambda0 restricted to sigma-fixed sections.
    std::size_t evaluation_rank(const Scalar &lambda0) const {
        const std::size_t R = 2 * dim();
        auto basis = invariant_section_space();
        RationalMatrix E(R, basis.size(), Rational(0));
        for (std::size_t c = 0; c < basis.size(); ++c) {
            SectionO1 s{complexify({basis[c].begin(), basis[c].begin() + R}),
                        complexify({basis[c].begin() + R, basis[c].end()})};
            auto val = realify(s.at(lambda0));
            for (std::size_t k = 0; k < R; ++k)
                E(k, c) = val[k];
        }
        return nahodge::rank(E);
    }

  private:
    std::size_t r_;
    ScalarMatrix jm_;
};

struct TwistorModel {
    P1Bundle<Scalar> bundle;
    ScalarMatrix frame_minus; // columns w_k: -i eigenvectors of I (complexified)
    ScalarMatrix frame_plus;  // columns e_j: +i eigenvectors of I
    ScalarMatrix coupling;    // J w_k = sum_j coupling(j,k) e_j
};

namespace detail {
inline ScalarMatrix columns(const std::vector<std::vector<Scalar>> &vs, std::size_t len) {
    return ScalarMatrix::from_rows(vs, len).transpose();
}
inline ScalarMatrix to_scalar(const RationalMatrix &m) {
    return m.map([](const Rational &q) { return Scalar(q); });
}
} // namespace detail

/// The bundle over P^1 whose fiber at lambda is (W, I_lambda): the quotient of
/// the complexification by the -i eigenspace of I_lambda.
inline TwistorModel twistor_bundle(const QuaternionicSpace &Q,
                                   const std::vector<Scalar> &sample_lambdas = {Scalar(1), Scalar::i()}) {
    const std::size_t R = 2 * Q.dim(), h = R / 2;
    ScalarMatrix RI = detail::to_scalar(Q.I().realified());
    ScalarMatrix RJ = detail::to_scalar(Q.J().realified());
    ScalarMatrix id = ScalarMatrix::identity(R);
    auto minus = nullspace(RI + Scalar::i() * id);
    auto plus = nullspace(RI - Scalar::i() * id);
    ensure(minus.size() == h && plus.size() == h, "eigenspaces of I have the wrong dimension");
    ScalarMatrix Wm = detail::columns(minus, R), Ep = detail::columns(plus, R);

    // coupling: solve Ep * M = RJ * Wm
    ScalarMatrix rhs = RJ * Wm;
    ScalarMatrix aug(R, h + h);
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < h; ++j)
            aug(i, j) = Ep(i, j);
        for (std::size_t j = 0; j < h; ++j)
            aug(i, h + j) = rhs(i, j);
    }
    auto red = rref(aug);
    ensure(red.pivots.size() == h && red.pivots.back() == h - 1, "J does not map the -i eigenspace into the +i one");
    ScalarMatrix M(h, h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
            M(i, j) = red.reduced(i, h + j);
    ensure(Ep * M == rhs, "coupling matrix does not reproduce J");

    for (const auto &lam : sample_lambdas) {
        ScalarMatrix RIl = detail::to_scalar(Q.structure_at(lam).realified());
        for (std::size_t k = 0; k < h; ++k) {
            std::vector<Scalar> w = Wm.col(k), jw = RJ.apply(w);
            for (std::size_t i = 0; i < R; ++i)
                w[i] += Scalar::i() * lam * jw[i];
            auto img = RIl.apply(w);
            for (std::size_t i = 0; i < R; ++i)
                ensure(img[i] == -Scalar::i() * w[i], "moving frame is not an eigenframe of I_lambda");
        }
    }

    auto Minv = try_inverse(M);
    if (!Minv)
        throw InvariantError("degenerate twistor frame");
    ZMatrix<Scalar> G = Minv->map([](const Scalar &c) { return Laurent1<Scalar>::monomial(-1, Scalar::i() * c); });
    return {P1Bundle<Scalar>(G), Wm, Ep, M};
}

/// Dimension of the space of symmetric real-bilinear maps B: W x W -> W'
/// with B(Av, w) = A B(v, w) = B(v, Aw) for A in {I, J} (or {I} alone).
inline std::size_t quaternionic_sff_space(std::size_t r, std::size_t r2, bool include_J = true) {
    QuaternionicSpace W = QuaternionicSpace::standard(r), W2 = QuaternionicSpace::standard(r2);
    const std::size_t n = 4 * r, m = 4 * r2;
    std::vector<RationalMatrix> src{W.I().realified()}, dst{W2.I().realified()};
    if (include_J) {
        src.push_back(W.J().realified());
        dst.push_back(W2.J().realified());
    }
    // unknown B(e_a, e_b)_c for a <= b
    auto pair_index = [n](std::size_t a, std::size_t b) {
        if (a > b)
            std::swap(a, b);
        return a * n - a * (a - 1) / 2 + (b - a);
    };
    const std::size_t npairs = n * (n + 1) / 2;
    auto var = [&](std::size_t a, std::size_t b, std::size_t c) { return pair_index(a, b) * m + c; };
    std::vector<std::vector<Rational>> rows;
    for (std::size_t k = 0; k < src.size(); ++k) {
        const RationalMatrix &A = src[k], &A2 = dst[k];
        for (int slot = 0; slot < 2; ++slot)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t c = 0; c < m; ++c) {
                        // B(A e_a, e_b)_c - (A2 B(e_a, e_b))_c = 0 (slot 0), same in slot 1
                        std::vector<Rational> row(npairs * m, Rational(0));
                        for (std::size_t t = 0; t < n; ++t)
                            if (sgn(A(t, a)) != 0)
                                row[slot == 0 ? var(t, b, c) : var(b, t, c)] += A(t, a);
                        for (std::size_t t = 0; t < m; ++t)
                            if (sgn(A2(c, t)) != 0)
                                row[slot == 0 ? var(a, b, t) : var(b, a, t)] -= A2(c, t);
                        if (std::any_of(row.begin(), row.end(), [](const Rational &q) { return sgn(q) != 0; }))
                            rows.push_back(std::move(row));
                    }
    }
    if (rows.empty())
        return npairs * m;
    return npairs * m - rank(RationalMatrix::from_rows(rows));
}

} // namespace nahodge

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "nahodge/birkhoff.hpp"
#include "nahodge/errors.hpp"
#include "nahodge/matrix.hpp"
#include "nahodge/scalar.hpp"

namespace nahodge {

/// Subspace of Scalar^n spanned by the rows of a matrix.
struct Subspace {
    std::size_t dim_ambient = 0;
    ScalarMatrix rows; // k x n, not necessarily independent

    static Subspace zero(std::size_t n) { return {n, ScalarMatrix(0, n)}; }
    static Subspace whole(std::size_t n) { return {n, ScalarMatrix::identity(n)}; }
    static Subspace span(std::size_t n, const std::vector<std::vector<Scalar>> &vs) {
        for (const auto &v : vs)
            require(v.size() == n, "basis vector has the wrong length");
        return {n, ScalarMatrix::from_rows(vs, n)};
    }

    std::size_t dim() const { return rank(rows); }
    /// Canonical basis: nonzero rows of the reduced row echelon form.
    std::vector<std::vector<Scalar>> canonical_basis() const {
        auto red = rref(rows);
        std::vector<std::vector<Scalar>> out;
        for (std::size_t r = 0; r < red.pivots.size(); ++r)
            out.push_back(red.reduced.row(r));
        return out;
    }
    bool contains(const Subspace &o) const { return joined(o).dim() == dim(); }
    Subspace joined(const Subspace &o) const {
        require(dim_ambient == o.dim_ambient, "subspaces of different spaces");
        std::vector<std::vector<Scalar>> vs;
        for (std::size_t i = 0; i < rows.rows(); ++i)
            vs.push_back(rows.row(i));
        for (std::size_t i = 0; i < o.rows.rows(); ++i)
            vs.push_back(o.rows.row(i));
        return span(dim_ambient, vs);
    }
    friend bool operator==(const Subspace &a, const Subspace &b) {
        return a.dim_ambient == b.dim_ambient && a.contains(b) && b.contains(a);
    }
};

/// Decreasing filtration F^{p_min} = V ⊇ ... ⊇ F^{p_max} ⊇ F^{p_max+1} = 0.
class FilteredSpace {
  public:
    FilteredSpace(std::size_t n, int p_min, std::vector<Subspace> steps)
        : n_(n), p_min_(p_min), steps_(std::move(steps)) {
        require(n_ > 0, "filtered space must have positive dimension");
        require(!steps_.empty(), "filtration needs at least one step");
        for (const auto &s : steps_)
            require(s.dim_ambient == n_, "filtration step lives in the wrong space");
        require(steps_.front().dim() == n_, "filtration is not complete: first step is not the whole space");
        for (std::size_t k = 0; k + 1 < steps_.size(); ++k)
            require(steps_[k].contains(steps_[k + 1]), "filtration steps are not nested");
    }

    std::size_t dim() const { return n_; }
    int p_min() const { return p_min_; }
    int p_max() const { return p_min_ + static_cast<int>(steps_.size()) - 1; }
    const std::vector<Subspace> &steps() const { return steps_; }

    /// F^p with F^p = V below the listed range and 0 above it.
    Subspace at(int p) const {
        if (p < p_min_)
            return Subspace::whole(n_);
        if (p > p_max())
            return Subspace::zero(n_);
        return steps_[p - p_min_];
    }

    /// Equality of all F^p as subspaces.
    friend bool operator==(const FilteredSpace &a, const FilteredSpace &b) {
        if (a.n_ != b.n_)
            return false;
        const int lo = std::min(a.p_min(), b.p_min()), hi = std::max(a.p_max(), b.p_max()) + 1;
        for (int p = lo; p <= hi; ++p)
            if (!(a.at(p) == b.at(p)))
                return false;
        return true;
    }

    FilteredSpace conjugate() const {
        std::vector<Subspace> s;
        for (const auto &st : steps_)
            s.push_back({n_, conj(st.rows)});
        return FilteredSpace(n_, p_min_, std::move(s));
    }

  private:
    std::size_t n_;
    int p_min_;
    std::vector<Subspace> steps_;
};

/// Adapted basis v_i with weights p_i; the module is spanned by z^{-p_i} v_i.
struct ReesModule {
    std::size_t n = 0;
    std::vector<std::vector<Scalar>> basis;
    std::vector<int> weights;
};

inline ReesModule build_rees(const FilteredSpace &fs) {
    ReesModule r;
    r.n = fs.dim();
    detail::EchelonBasis<Scalar> taken(r.n);
    for (int p = fs.p_max(); p >= fs.p_min(); --p)
        for (auto &v : fs.at(p).canonical_basis())
            if (taken.insert(v)) {
                r.basis.push_back(std::move(v));
                r.weights.push_back(p);
            }
    ensure(r.basis.size() == r.n, "adapted basis does not span the space");
    for (int p = fs.p_min(); p <= fs.p_max() + 1; ++p) {
        auto cnt = std::count_if(r.weights.begin(), r.weights.end(), [p](int w) { return w >= p; });
        ensure(static_cast<std::size_t>(cnt) == fs.at(p).dim(), "weights do not reproduce the filtration");
    }
    return r;
}

inline FilteredSpace recover_filtration(const ReesModule &r) {
    require(r.n > 0 && r.basis.size() == r.n && r.weights.size() == r.n, "malformed Rees module");
    require(rank(ScalarMatrix::from_rows(r.basis)) == r.n, "Rees module basis is not a basis");
    const int lo = *std::min_element(r.weights.begin(), r.weights.end());
    const int hi = *std::max_element(r.weights.begin(), r.weights.end());
    std::vector<Subspace> steps;
    for (int p = lo; p <= hi; ++p) {
        std::vector<std::vector<Scalar>> vs;
        for (std::size_t i = 0; i < r.n; ++i)
            if (r.weights[i] >= p)
                vs.push_back(r.basis[i]);
        steps.push_back(Subspace::span(r.n, vs));
    }
    return FilteredSpace(r.n, lo, std::move(steps));
}

/// Fiber at z = 0: graded dimensions by weight.
inline std::map<int, std::size_t> fiber_at_zero(const ReesModule &r) {
    std::map<int, std::size_t> g;
    for (int w : r.weights)
        ++g[w];
    return g;
}

/// Fiber at z = 1: the underlying space, via the basis vectors themselves.
inline Subspace fiber_at_one(const ReesModule &r) { return Subspace::span(r.n, r.basis); }

/// Griffiths transversality: each component N_j of the connection maps F^p
/// into F^{p-1}.
inline bool griffiths_check(const FilteredSpace &fs, const std::vector<ScalarMatrix> &connection) {
    const std::size_t n = fs.dim();
    for (const auto &N : connection)
        require(N.rows() == n && N.cols() == n, "connection component has the wrong shape");
    for (int p = fs.p_min() + 1; p <= fs.p_max(); ++p) {
        Subspace src = fs.at(p), dst = fs.at(p - 1);
        for (const auto &N : connection) {
            std::vector<std::vector<Scalar>> img;
            for (std::size_t i = 0; i < src.rows.rows(); ++i)
                img.push_back(N.apply(src.rows.row(i)));
            if (!dst.contains(Subspace::span(n, img)))
                return false;
        }
    }
    return true;
}

struct PurityReport {
    std::vector<int> splitting;
    bool pure = false;
    std::optional<int> weight;
};

struct GluedBundle {
    P1Bundle<Scalar> bundle;
    PurityReport purity;
};

/// Glues the Rees modules of F (chart z) and Fbar (chart z^{-1}) along V.
/// A line with F-weight p and Fbar-weight q becomes O(p + q).
inline GluedBundle rees_p1(const FilteredSpace &f, const std::optional<FilteredSpace> &fbar_in = std::nullopt) {
    const FilteredSpace fbar = fbar_in ? *fbar_in : f.conjugate();
    require(f.dim() == fbar.dim(), "filtrations live in spaces of different dimension");
    const std::size_t n = f.dim();
    ReesModule rf = build_rees(f), rb = build_rees(fbar);
    // columns of P: coordinates of v_i in the basis u_j
    ScalarMatrix U = ScalarMatrix::from_rows(rb.basis).transpose();
    ScalarMatrix Vm = ScalarMatrix::from_rows(rf.basis).transpose();
    ScalarMatrix P = inverse(U) * Vm;
    std::vector<int> neg_q, neg_p;
    for (std::size_t i = 0; i < n; ++i) {
        neg_q.push_back(-rb.weights[i]);
        neg_p.push_back(-rf.weights[i]);
    }
    ZMatrix<Scalar> Pz = P.map([](const Scalar &c) { return Laurent1<Scalar>(c); });
    ZMatrix<Scalar> G = z_diagonal<Scalar>(neg_q) * Pz * z_diagonal<Scalar>(neg_p);
    P1Bundle<Scalar> b(G);
    PurityReport rep;
    rep.splitting = b.splitting_type();
    rep.pure = std::all_of(rep.splitting.begin(), rep.splitting.end(), [&](int a) { return a == rep.splitting[0]; });
    if (rep.pure)
        rep.weight = rep.splitting[0];
    return {std::move(b), std::move(rep)};
}

} // namespace nahodge

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nahodge/errors.hpp"
#include "nahodge/laurent.hpp"
#include "nahodge/rational.hpp"
#include "nahodge/scalar.hpp"
#include "nahodge/smith.hpp"

namespace nahodge {

/// Point of projective space, scaled so the first nonzero coordinate is 1.
class ProjPoint {
  public:
    explicit ProjPoint(std::vector<Scalar> x) : x_(std::move(x)) {
        auto it = std::find_if(x_.begin(), x_.end(), [](const Scalar &c) { return !c.is_zero(); });
        require(it != x_.end(), "projective point cannot have all coordinates zero");
        const Scalar inv = it->inverse();
        for (auto &c : x_)
            c = c * inv;
    }
    std::size_t size() const { return x_.size(); }
    const Scalar &operator[](std::size_t i) const { return x_[i]; }
    const std::vector<Scalar> &coords() const { return x_; }
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < x_.size(); ++i)
            if (!x_[i].is_zero())
                s.push_back(i);
        return s;
    }
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < x_.size(); ++i)
            s += (i ? ":" : "") + x_[i].to_string();
        return s + "]";
    }
    friend bool operator==(const ProjPoint &a, const ProjPoint &b) { return a.x_ == b.x_; }

  private:
    std::vector<Scalar> x_;
};

/// Fixed locus of the action for one weight value: the coordinate subspace on
/// the indices carrying that weight.
struct FixedComponent {
    int weight;
    std::vector<std::size_t> indices;
    friend bool operator==(const FixedComponent &a, const FixedComponent &b) {
        return a.weight == b.weight && a.indices == b.indices;
    }
};

enum class Membership { InU, InYPlus, InYMinus };

inline std::string to_string(Membership m) {
    switch (m) {
    case Membership::InU:
        return "in_U";
    case Membership::InYPlus:
        return "in_Y+";
    case Membership::InYMinus:
        return "in_Y-";
    }
    return "?";
}

/// Reflexive-transitive order on fixed components, indexed by component.
struct ComponentOrder {
    std::vector<int> weights; // component weights, ascending
    std::vector<std::vector<bool>> leq;
    std::size_t index_of(int w) const {
        auto it = std::find(weights.begin(), weights.end(), w);
        require(it != weights.end(), "no fixed component has this weight");
        return static_cast<std::size_t>(it - weights.begin());
    }
    bool less_equal(int wu, int wv) const { return leq[index_of(wu)][index_of(wv)]; }
};

struct Decomposition {
    std::vector<int> plus;  // component weights with alpha > a
    std::vector<int> minus; // component weights with alpha < a
};

/// Linear action t.x_i = t^{w_i} x_i on P^N with linearization shift a; the
/// linearization weight over the component of weight w is alpha = -w.
class WeightedAction {
  public:
    explicit WeightedAction(std::vector<int> w, Rational a = Rational(0)) : w_(std::move(w)), a_(a) {
        require(!w_.empty(), "weights must be nonempty");
    }

    std::size_t size() const { return w_.size(); }
    const std::vector<int> &weights() const { return w_; }
    const Rational &shift() const { return a_; }
    static int alpha(int weight) { return -weight; }

    void check_shift() const {
        for (int w : w_)
            require(a_ != alpha(w), "shift a collides with a fixed-component weight alpha = " + std::to_string(alpha(w)));
    }

    std::vector<FixedComponent> fixed_components() const {
        std::map<int, std::vector<std::size_t>> by;
        for (std::size_t i = 0; i < w_.size(); ++i)
            by[w_[i]].push_back(i);
        std::vector<FixedComponent> out;
        for (auto &[w, idx] : by)
            out.push_back({w, idx});
        return out;
    }

    ProjPoint act(const Scalar &t, const ProjPoint &x) const {
        check_point(x);
        require(!t.is_zero(), "the multiplicative group has no zero element");
        std::vector<Scalar> y(x.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] = t.pow(w_[i]) * x[i];
        return ProjPoint(y);
    }

    bool is_fixed(const ProjPoint &x) const {
        check_point(x);
        auto s = x.support();
        return std::all_of(s.begin(), s.end(), [&](std::size_t i) { return w_[i] == w_[s[0]]; });
    }
    /// Weight of the fixed component containing the fixed point x.
    int component_of(const ProjPoint &x) const {
        require(is_fixed(x), "point is not fixed by the action");
        return w_[x.support()[0]];
    }

    ProjPoint limit0(const ProjPoint &x) const { return limit(x, true); }
    ProjPoint limitinf(const ProjPoint &x) const { return limit(x, false); }

    /// With no witnesses: the total order by weight. With witnesses: the
    /// reflexive-transitive closure of limit0(x) <= limitinf(x).
    ComponentOrder comp_order(const std::optional<std::vector<ProjPoint>> &witnesses = std::nullopt) const {
        ComponentOrder o;
        for (const auto &c : fixed_components())
            o.weights.push_back(c.weight);
        const std::size_t k = o.weights.size();
        o.leq.assign(k, std::vector<bool>(k, false));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                o.leq[i][j] = witnesses ? i == j : o.weights[i] <= o.weights[j];
        if (witnesses) {
            for (const auto &x : *witnesses)
                o.leq[o.index_of(component_of(limit0(x)))][o.index_of(component_of(limitinf(x)))] = true;
            for (std::size_t m = 0; m < k; ++m)
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        if (o.leq[i][m] && o.leq[m][j])
                            o.leq[i][j] = true;
        }
        return o;
    }

    Decomposition decompose(const std::optional<std::vector<ProjPoint>> &witnesses = std::nullopt) const {
        check_shift();
        Decomposition d;
        for (const auto &c : fixed_components())
            (alpha(c.weight) > a_ ? d.plus : d.minus).push_back(c.weight);
        const ComponentOrder o = comp_order(witnesses);
        auto in = [](const std::vector<int> &s, int w) { return std::find(s.begin(), s.end(), w) != s.end(); };
        for (int u : o.weights)
            for (int v : o.weights) {
                if (!o.less_equal(u, v))
                    continue;
                ensure(!(in(d.plus, v) && !in(d.plus, u)), "V+ is not closed downward in the component order");
                ensure(!(in(d.minus, u) && !in(d.minus, v)), "V- is not closed upward in the component order");
            }
        return d;
    }

    Membership membership(const ProjPoint &x) const {
        check_shift();
        const bool y_plus = alpha(component_of(limitinf(x))) > a_;
        const bool y_minus = alpha(component_of(limit0(x))) < a_;
        ensure(!(y_plus && y_minus), "Y+ and Y- intersect");
        if (y_plus)
            return Membership::InYPlus;
        if (y_minus)
            return Membership::InYMinus;
        return Membership::InU;
    }
    bool in_U(const ProjPoint &x) const { return membership(x) == Membership::InU; }

    /// Whether some t in the multiplicative group of the algebraic closure
    /// carries x to y.
    bool orbit_equivalent(const ProjPoint &x, const ProjPoint &y) const {
        check_point(x);
        check_point(y);
        auto sx = x.support();
        if (sx != y.support())
            return false;
        const std::size_t i0 = sx[0];
        const std::size_t k = sx.size();
        std::vector<Scalar> ratio(k);
        IntMatrix d(k, 1, Integer(0));
        bool all_zero = true;
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t i = sx[j];
            ratio[j] = (y[i] * x[i0]) / (x[i] * y[i0]);
            d(j, 0) = w_[i] - w_[i0];
            if (w_[i] != w_[i0])
                all_zero = false;
        }
        if (all_zero)
            return std::all_of(ratio.begin(), ratio.end(), [](const Scalar &r) { return r.is_one(); });
        // U d = (g, 0, ..., 0)^T: rows l >= 1 of U are the lattice relations
        SmithForm snf = smith_normal_form(d);
        for (std::size_t l = 1; l < k; ++l) {
            Scalar prod(1);
            for (std::size_t j = 0; j < k; ++j) {
                const Integer &e = snf.U(l, j);
                if (sgn(e) == 0)
                    continue;
                require(e.fits_slong_p(), "lattice relation exponent too large");
                prod = prod * ratio[j].pow(e.get_si());
            }
            if (!prod.is_one())
                return false;
        }
        return true;
    }

    /// Degree-d monomials x^m with sum m_i w_i = d a, in ascending lexicographic order.
    std::vector<std::vector<int>> invariant_monomials(int d) const {
        require(d >= 0, "degree must be non-negative");
        Rational target = a_ * d;
        if (target.get_den() != 1)
            return {};
        const long t = target.get_num().get_si();
        std::vector<std::vector<int>> out;
        std::vector<int> cur(w_.size(), 0);
        enumerate(0, d, 0, t, cur, out);
        return out;
    }

    /// Partition of the fixed components into those the caller marks as lying
    /// in a closed subvariety Z and the rest.
    std::pair<std::vector<FixedComponent>, std::vector<FixedComponent>>
    split_components(const std::set<int> &inside_weights) const {
        std::pair<std::vector<FixedComponent>, std::vector<FixedComponent>> r;
        for (auto &c : fixed_components())
            (inside_weights.count(c.weight) ? r.first : r.second).push_back(c);
        return r;
    }

  private:
    std::vector<int> w_;
    Rational a_;

    void check_point(const ProjPoint &x) const {
        require(x.size() == w_.size(), "point has the wrong number of coordinates");
    }

    ProjPoint limit(const ProjPoint &x, bool at_zero) const {
        check_point(x);
        auto s = x.support();
        int best = w_[s[0]];
        for (auto i : s)
            best = at_zero ? std::min(best, w_[i]) : std::max(best, w_[i]);
        std::vector<Scalar> y(x.size(), Scalar(0));
        for (auto i : s)
            if (w_[i] == best)
                y[i] = x[i];
        return ProjPoint(y);
    }

    void enumerate(std::size_t i, int left, long acc, long target, std::vector<int> &cur,
                   std::vector<std::vector<int>> &out) const {
        if (i + 1 == w_.size()) {
            cur[i] = left;
            if (acc + static_cast<long>(left) * w_[i] == target)
                out.push_back(cur);
            cur[i] = 0;
            return;
        }
        for (int m = 0; m <= left; ++m) {
            cur[i] = m;
            enumerate(i + 1, left - m, acc + static_cast<long>(m) * w_[i], target, cur, out);
        }
        cur[i] = 0;
    }
};

/// Arc: projective coordinates that are Laurent polynomials in the uniformizer s.
class Arc {
  public:
    explicit Arc(std::vector<Laurent1<Scalar>> x) : x_(std::move(x)) {
        require(std::any_of(x_.begin(), x_.end(), [](const auto &p) { return !p.is_zero(); }), "arc is identically zero");
    }
    std::size_t size() const { return x_.size(); }
    const Laurent1<Scalar> &operator[](std::size_t i) const { return x_[i]; }
    bool nonzero(std::size_t i) const { return !x_[i].is_zero(); }
    int valuation(std::size_t i) const { return x_[i].min_exp(); }
    Scalar leading(std::size_t i) const { return x_[i].coeff(x_[i].min_exp()); }
    /// The point of leading coefficients (same support as the generic point).
    ProjPoint leading_point() const {
        std::vector<Scalar> y(x_.size(), Scalar(0));
        for (std::size_t i = 0; i < x_.size(); ++i)
            if (nonzero(i))
                y[i] = leading(i);
        return ProjPoint(y);
    }

  private:
    std::vector<Laurent1<Scalar>> x_;
};

/// Piece of the Newton envelope: an open epsilon-interval landing in one fixed
/// component, followed (unless it is the last) by a breakpoint.
struct EnvelopePiece {
    std::optional<Rational> lo, hi; // nullopt = -inf / +inf
    int weight;                     // fixed component of the landing point
    ProjPoint landing;
};

struct Breakpoint {
    Rational epsilon;
    ProjPoint landing;
};

struct NewtonProfile {
    std::vector<EnvelopePiece> intervals;
    std::vector<Breakpoint> breakpoints; // breakpoints[k] separates intervals k and k+1
};

/// Limits of t.arc for gauges t = s^{-epsilon} as s -> 0.
inline NewtonProfile newton_limits(const WeightedAction &W, const Arc &arc) {
    require(arc.size() == W.size(), "arc has the wrong number of coordinates");
    const auto &w = W.weights();
    // per weight: minimal valuation among that weight's nonzero coordinates
    std::map<int, int> vmin;
    for (std::size_t i = 0; i < arc.size(); ++i)
        if (arc.nonzero(i)) {
            auto it = vmin.find(w[i]);
            if (it == vmin.end() || arc.valuation(i) < it->second)
                vmin[w[i]] = arc.valuation(i);
        }
    auto landing_at = [&](const std::set<int> &weights) {
        std::vector<Scalar> y(arc.size(), Scalar(0));
        for (std::size_t i = 0; i < arc.size(); ++i)
            if (arc.nonzero(i) && weights.count(w[i]) && arc.valuation(i) == vmin[w[i]])
                y[i] = arc.leading(i);
        return ProjPoint(y);
    };
    NewtonProfile prof;
    auto cur = vmin.begin();
    std::optional<Rational> lo;
    while (true) {
        // next crossing to a heavier weight; ties resolve to the heaviest
        std::optional<Rational> best;
        auto best_it = vmin.end();
        std::set<int> tied{cur->first};
        for (auto it = std::next(cur); it != vmin.end(); ++it) {
            Rational eps(it->second - cur->second, it->first - cur->first);
            eps.canonicalize();
            if (!best || eps < *best) {
                best = eps;
                best_it = it;
                tied = {cur->first, it->first};
            } else if (eps == *best) {
                best_it = it;
                tied.insert(it->first);
            }
        }
        prof.intervals.push_back({lo, best, cur->first, landing_at({cur->first})});
        if (!best)
            break;
        prof.breakpoints.push_back({*best, landing_at(tied)});
        lo = best;
        cur = best_it;
    }
    return prof;
}

struct GaugeChoice {
    Rational epsilon;
    ProjPoint landing;
    int left_weight, right_weight;
};

/// The breakpoint whose neighbouring intervals land in V+ (left) and V- (right).
inline GaugeChoice choose_gauge(const WeightedAction &W, const Arc &arc) {
    W.check_shift();
    require(W.in_U(arc.leading_point()), "the generic point of the arc is not in U");
    NewtonProfile prof = newton_limits(W, arc);
    std::optional<GaugeChoice> found;
    auto plus = [&](int weight) { return Rational(WeightedAction::alpha(weight)) > W.shift(); };
    for (std::size_t k = 0; k < prof.breakpoints.size(); ++k) {
        const int l = prof.intervals[k].weight, r = prof.intervals[k + 1].weight;
        if (plus(l) && !plus(r)) {
            ensure(!found, "straddling breakpoint is not unique");
            found = GaugeChoice{prof.breakpoints[k].epsilon, prof.breakpoints[k].landing, l, r};
        }
    }
    if (!found)
        throw PreconditionError("no breakpoint straddles V+ and V-");
    ensure(W.in_U(found->landing), "gauge landing point is not in U");
    return *found;
}

} // namespace nahodge

#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "nahodge/nahodge.hpp"

namespace nahodge::io {

using json = nlohmann::json;

namespace detail {
inline const json &field(const json &j, const char *key) {
    require(j.is_object(), std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    require(it != j.end(), std::string("missing field '") + key + "'");
    return *it;
}
inline const json &array(const json &j, const std::string &what) {
    require(j.is_array(), what + " must be an array");
    return j;
}
} // namespace detail

inline long to_int(const json &j, const std::string &what = "integer") {
    require(j.is_number_integer(), what + " must be an integer");
    return j.get<long>();
}

inline std::size_t to_size(const json &j, const std::string &what) {
    long v = to_int(j, what);
    require(v >= 0, what + " must be non-negative");
    return static_cast<std::size_t>(v);
}

inline Rational to_rational(const json &j) {
    if (j.is_number_integer())
        return Rational(j.get<long>());
    require(j.is_string(), "rational must be a string 'p/q' or an integer");
    return parse_rational(j.get<std::string>());
}

// ---- scalars ----

inline Scalar to_scalar(const json &j) {
    if (j.is_number_integer())
        return Scalar(Rational(j.get<long>()));
    if (j.is_string())
        return Scalar::parse(j.get<std::string>());
    if (j.is_object()) {
        long order = to_int(detail::field(j, "order"), "cyclotomic order");
        require(order >= 1 && order <= max_cyclotomic_order(), "cyclotomic order out of range");
        std::vector<Rational> c;
        for (const auto &x : detail::array(detail::field(j, "coeffs"), "coeffs"))
            c.push_back(to_rational(x));
        return Scalar::cyclotomic(static_cast<int>(order), c);
    }
    throw PreconditionError("scalar must be a string, an integer or a cyclotomic object");
}

inline json from_scalar(const Scalar &s) {
    if (s.is_gaussian())
        return s.to_string();
    json c = json::array();
    for (const auto &q : s.cyclotomic_data().c)
        c.push_back(q.get_str());
    return {{"order", s.order()}, {"coeffs", c}};
}

inline std::vector<Scalar> to_scalar_vector(const json &j) {
    std::vector<Scalar> v;
    for (const auto &x : detail::array(j, "vector"))
        v.push_back(to_scalar(x));
    return v;
}

inline json from_scalar_vector(const std::vector<Scalar> &v) {
    json a = json::array();
    for (const auto &s : v)
        a.push_back(from_scalar(s));
    return a;
}

inline ScalarMatrix to_scalar_matrix(const json &j, std::optional<std::size_t> cols = std::nullopt) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto &r : detail::array(j, "matrix"))
        rows.push_back(to_scalar_vector(r));
    return ScalarMatrix::from_rows(rows, cols.value_or(0));
}

inline json from_scalar_matrix(const ScalarMatrix &m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(from_scalar_vector(m.row(i)));
    return a;
}

inline IntMatrix to_int_matrix(const json &j) {
    std::vector<std::vector<Integer>> rows;
    for (const auto &r : detail::array(j, "integer matrix")) {
        std::vector<Integer> row;
        for (const auto &x : detail::array(r, "integer matrix row")) {
            if (x.is_string())
                row.emplace_back(x.get<std::string>());
            else
                row.emplace_back(to_int(x, "integer matrix entry"));
        }
        rows.push_back(std::move(row));
    }
    return IntMatrix::from_rows(rows);
}

inline json from_integer(const Integer &z) {
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

inline json from_int_matrix(const IntMatrix &m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.push_back(from_integer(m(i, j)));
        a.push_back(r);
    }
    return a;
}

// ---- Laurent polynomials ----

inline LaurentPoly to_laurent_poly(const json &j, std::size_t nvars) {
    LaurentPoly p(nvars);
    for (const auto &t : detail::array(j, "Laurent polynomial")) {
        std::vector<int> e;
        for (const auto &x : detail::array(detail::field(t, "exp"), "exp"))
            e.push_back(static_cast<int>(to_int(x, "exponent")));
        require(e.size() == nvars, "exponent vector has the wrong length");
        p.add_term(e, to_scalar(detail::field(t, "coeff")));
    }
    return p;
}

inline json from_laurent_poly(const LaurentPoly &p) {
    json a = json::array();
    for (const auto &[e, c] : p.terms())
        a.push_back({{"exp", e}, {"coeff", from_scalar(c)}});
    return a;
}

inline LaurentMatrix to_laurent_matrix(const json &j, std::size_t nvars) {
    std::vector<std::vector<LaurentPoly>> rows;
    for (const auto &r : detail::array(j, "Laurent matrix")) {
        std::vector<LaurentPoly> row;
        for (const auto &x : detail::array(r, "Laurent matrix row"))
            row.push_back(to_laurent_poly(x, nvars));
        rows.push_back(std::move(row));
    }
    return LaurentMatrix::from_rows(rows);
}

/// One-variable Laurent polynomial: [{"exp": e, "coeff": scalar}, ...].
inline Laurent1<Scalar> to_laurent1(const json &j) {
    Laurent1<Scalar> p;
    for (const auto &t : detail::array(j, "Laurent polynomial"))
    {
        const json &e = detail::field(t, "exp");
        const json &e1 = e.is_array() && e.size() == 1 ? e[0] : e;
        p.add_term(static_cast<int>(to_int(e1, "exponent")), to_scalar(detail::field(t, "coeff")));
    }
    return p;
}

inline json from_laurent1(const Laurent1<Scalar> &p) {
    json a = json::array();
    for (const auto &[e, c] : p.terms())
        a.push_back({{"exp", e}, {"coeff", from_scalar(c)}});
    return a;
}

/// Polynomial in s as ascending coefficient array.
inline SPoly to_spoly(const json &j) {
    SPoly p;
    int k = 0;
    for (const auto &c : detail::array(j, "polynomial in s"))
        p.add_term(k++, to_scalar(c));
    return p;
}

inline json from_spoly(const SPoly &p) {
    json a = json::array();
    if (p.is_zero())
        return json::array({"0"});
    for (int k = 0; k <= p.max_exp(); ++k)
        a.push_back(from_scalar(p.coeff(k)));
    return a;
}

inline RatFun to_ratfun(const json &j) {
    SPoly num = to_spoly(detail::field(j, "num"));
    if (!j.contains("den"))
        return RatFun(num);
    return RatFun(num, to_spoly(j.at("den")));
}

inline json from_ratfun(const RatFun &f) {
    json o = {{"num", from_spoly(f.num())}};
    if (!f.is_polynomial())
        o["den"] = from_spoly(f.den());
    return o;
}

/// Entry in z with rational-function coefficients: [{"zexp": e, "coeff": {"num": [...], "den": [...]}}, ...].
inline Laurent1<RatFun> to_disk_entry(const json &j) {
    Laurent1<RatFun> p;
    for (const auto &t : detail::array(j, "matrix entry"))
        p.add_term(static_cast<int>(to_int(detail::field(t, "zexp"), "zexp")), to_ratfun(detail::field(t, "coeff")));
    return p;
}

inline json from_disk_entry(const Laurent1<RatFun> &p) {
    json a = json::array();
    for (const auto &[e, c] : p.terms())
        a.push_back({{"zexp", e}, {"coeff", from_ratfun(c)}});
    return a;
}

template <class T, class F> Matrix<T> to_square(const json &j, std::size_t n, F entry) {
    const json &rows = detail::array(j, "entries");
    require(rows.size() == n, "entries must have 'rank' rows");
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const json &r = detail::array(rows[i], "entries row");
        require(r.size() == n, "entries rows must have 'rank' columns");
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = entry(r[k]);
    }
    return m;
}

template <class T, class F> json from_matrix(const Matrix<T> &m, F entry) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            r.push_back(entry(m(i, k)));
        a.push_back(r);
    }
    return a;
}

inline json from_zmatrix(const ZMatrix<Scalar> &m) { return from_matrix(m, from_laurent1); }
inline json from_disk_matrix(const DiskMatrix &m) { return from_matrix(m, from_disk_entry); }

// ---- bundles ----

inline bool is_ratfun_field(const json &j) {
    if (!j.contains("field"))
        return false;
    const std::string f = j.at("field").get<std::string>();
    require(f == "gaussian" || f == "ratfun_s", "field must be 'gaussian' or 'ratfun_s'");
    return f == "ratfun_s";
}

inline ZMatrix<Scalar> to_gaussian_transition(const json &j) {
    return to_square<Laurent1<Scalar>>(detail::field(j, "entries"), to_size(detail::field(j, "rank"), "rank"),
                                       to_laurent1);
}

inline DiskMatrix to_disk_matrix(const json &j) {
    return to_square<Laurent1<RatFun>>(detail::field(j, "entries"), to_size(detail::field(j, "rank"), "rank"),
                                       to_disk_entry);
}

inline DiskFamily to_disk_family(const json &j) { return DiskFamily(to_disk_matrix(j)); }

inline json from_disk_family(const DiskFamily &F) {
    return {{"rank", F.rank()}, {"entries", from_disk_matrix(F.transition())}};
}

// ---- filtrations ----

inline FilteredSpace to_filtration(const json &j) {
    const std::size_t n = to_size(detail::field(j, "dim"), "dim");
    const json &steps = detail::array(detail::field(j, "steps"), "steps");
    require(!steps.empty(), "filtration needs at least one step");
    std::vector<Subspace> subs;
    long p0 = 0;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        long p = to_int(detail::field(steps[k], "p"), "p");
        if (k == 0)
            p0 = p;
        require(p == p0 + static_cast<long>(k), "filtration steps must have consecutive p");
        std::vector<std::vector<Scalar>> basis;
        for (const auto &v : detail::array(detail::field(steps[k], "basis"), "basis"))
            basis.push_back(to_scalar_vector(v));
        subs.push_back(Subspace::span(n, basis));
    }
    return FilteredSpace(n, static_cast<int>(p0), std::move(subs));
}

inline json from_filtration(const FilteredSpace &fs) {
    json steps = json::array();
    for (int p = fs.p_min(); p <= fs.p_max(); ++p) {
        json basis = json::array();
        for (const auto &v : fs.at(p).canonical_basis())
            basis.push_back(from_scalar_vector(v));
        steps.push_back({{"p", p}, {"basis", basis}});
    }
    return {{"dim", fs.dim()}, {"steps", steps}};
}

inline ReesModule to_rees(const json &j) {
    ReesModule r;
    r.n = to_size(detail::field(j, "dim"), "dim");
    for (const auto &v : detail::array(detail::field(j, "basis"), "basis"))
        r.basis.push_back(to_scalar_vector(v));
    for (const auto &w : detail::array(detail::field(j, "weights"), "weights"))
        r.weights.push_back(static_cast<int>(to_int(w, "weight")));
    return r;
}

inline json from_rees(const ReesModule &r) {
    json basis = json::array();
    for (const auto &v : r.basis)
        basis.push_back(from_scalar_vector(v));
    return {{"dim", r.n}, {"basis", basis}, {"weights", r.weights}};
}

inline std::vector<ScalarMatrix> to_connection(const json &j, std::size_t n) {
    std::vector<ScalarMatrix> out;
    for (const auto &m : detail::array(j, "connection")) {
        out.push_back(to_scalar_matrix(m, n));
        require(out.back().rows() == n && out.back().cols() == n, "connection component must be dim x dim");
    }
    return out;
}

// ---- twistor ----

inline QuaternionicSpace to_quaternionic(const json &j) {
    const std::size_t r = to_size(detail::field(j, "r"), "r");
    if (!j.contains("J"))
        return QuaternionicSpace::standard(r);
    return QuaternionicSpace(r, to_scalar_matrix(j.at("J"), 2 * r));
}

inline json from_section(const SectionO1 &s) { return {{"a", from_scalar_vector(s.a)}, {"b", from_scalar_vector(s.b)}}; }

inline SectionO1 to_section(const json &j) {
    return {to_scalar_vector(detail::field(j, "a")), to_scalar_vector(detail::field(j, "b"))};
}

inline json from_real_op(const RealLinearOp &op) {
    return {{"linear", from_scalar_matrix(op.lin)}, {"antilinear", from_scalar_matrix(op.anti)}};
}

inline std::optional<Scalar> to_lambda(const json &j) {
    if (j.is_string() && j.get<std::string>() == "inf")
        return std::nullopt;
    return to_scalar(j);
}

// ---- lambda family ----

inline HarmonicLine to_harmonic(const json &j) {
    auto nu = to_scalar_vector(detail::field(j, "nu"));
    auto th = to_scalar_vector(detail::field(j, "thetaPrime"));
    if (j.contains("g"))
        require(to_size(j.at("g"), "g") == nu.size(), "g does not match the coordinate count");
    return HarmonicLine(nu, th);
}

inline json from_harmonic(const HarmonicLine &h) {
    return {{"g", h.genus()}, {"nu", from_scalar_vector(h.nu)}, {"thetaPrime", from_scalar_vector(h.theta)}};
}

inline HodPoint to_hod_point(const json &j) {
    HodPoint p{to_scalar_vector(detail::field(j, "beta")), to_scalar_vector(detail::field(j, "eta")),
               to_scalar(detail::field(j, "lambda"))};
    require(p.beta.size() == p.eta.size(), "beta and eta must have the same length");
    return p;
}

inline json from_hod_point(const HodPoint &p) {
    return {{"beta", from_scalar_vector(p.beta)}, {"eta", from_scalar_vector(p.eta)}, {"lambda", from_scalar(p.lambda)}};
}

/// Candidate section: per coordinate, ascending coefficient arrays in lambda.
inline PolySection to_poly_section(const json &j) {
    PolySection s;
    auto read = [](const json &arr, std::vector<Laurent1<Scalar>> &out) {
        for (const auto &coord : detail::array(arr, "coordinate list")) {
            Laurent1<Scalar> p;
            int k = 0;
            for (const auto &c : detail::array(coord, "coefficient list"))
                p.add_term(k++, to_scalar(c));
            out.push_back(p);
        }
    };
    read(detail::field(j, "beta"), s.beta);
    read(detail::field(j, "eta"), s.eta);
    require(!s.beta.empty() && s.beta.size() == s.eta.size(), "beta and eta must have the same positive length");
    return s;
}

// ---- jump loci ----

inline CWPresentation to_cw(const json &j) {
    const std::size_t a = to_size(detail::field(j, "a"), "a");
    LaurentMatrix A = to_laurent_matrix(detail::field(j, "A"), a);
    if (j.contains("m"))
        require(to_size(j.at("m"), "m") == A.cols(), "m does not match the matrix");
    if (j.contains("l"))
        require(to_size(j.at("l"), "l") == A.rows(), "l does not match the matrix");
    return CWPresentation(a, A);
}

inline SubtorusParam to_subtorus(const json &j) {
    SubtorusParam s;
    s.zeta = to_scalar_vector(detail::field(j, "zeta"));
    for (const auto &r : detail::array(detail::field(j, "E"), "E")) {
        std::vector<int> row;
        for (const auto &x : detail::array(r, "E row"))
            row.push_back(static_cast<int>(to_int(x, "E entry")));
        s.E.push_back(row);
    }
    s.b = s.E.empty() ? 0 : s.E[0].size();
    return s;
}

// ---- G_m actions ----

inline WeightedAction to_action(const json &j) {
    std::vector<int> w;
    for (const auto &x : detail::array(detail::field(j, "weights"), "weights"))
        w.push_back(static_cast<int>(to_int(x, "weight")));
    Rational a = j.contains("a") ? to_rational(j.at("a")) : Rational(0);
    return WeightedAction(w, a);
}

inline ProjPoint to_point(const json &j) { return ProjPoint(to_scalar_vector(j)); }
inline json from_point(const ProjPoint &p) { return from_scalar_vector(p.coords()); }

inline Arc to_arc(const json &j) {
    std::vector<Laurent1<Scalar>> x;
    for (const auto &c : detail::array(j, "arc"))
        x.push_back(to_laurent1(c));
    return Arc(x);
}

inline json from_rational_opt(const std::optional<Rational> &q, const char *inf) {
    return q ? json(q->get_str()) : json(inf);
}

} // namespace nahodge::io

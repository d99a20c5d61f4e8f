#pragma once

#include <string>

#include "nahodge/errors.hpp"
#include "nahodge/laurent.hpp"
#include "nahodge/scalar.hpp"

namespace nahodge {

/// Polynomial in the disk parameter s over Scalar (exponents >= 0).
using SPoly = Laurent1<Scalar>;

/// Element of Q(i)(s) (or Q(zeta_n)(s)) kept as num/den with den monic and
/// gcd(num, den) = 1.
class RatFun {
  public:
    RatFun() : den_(Scalar(1)) {}
    RatFun(int c) : num_(Scalar(c)), den_(Scalar(1)) {}
    RatFun(const Scalar &c) : num_(c), den_(Scalar(1)) {}
    RatFun(SPoly num) : num_(std::move(num)), den_(Scalar(1)) { check_poly(num_); }
    RatFun(SPoly num, SPoly den) : num_(std::move(num)), den_(std::move(den)) {
        check_poly(num_);
        check_poly(den_);
        if (den_.is_zero())
            throw PreconditionError("rational function with zero denominator");
        normalize();
    }

    /// s^k
    static RatFun s_power(int k) {
        if (k >= 0)
            return RatFun(SPoly::monomial(k, Scalar(1)));
        return RatFun(SPoly(Scalar(1)), SPoly::monomial(-k, Scalar(1)));
    }

    const SPoly &num() const { return num_; }
    const SPoly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_monomial() && den_.min_exp() == 0; }
    /// Denominator does not vanish at s = 0.
    bool regular_at_zero() const { return !den_.coeff(0).is_zero(); }
    Scalar at_zero() const {
        require(regular_at_zero(), "rational function has a pole at s = 0");
        return num_.coeff(0) / den_.coeff(0);
    }
    /// Order of vanishing at s = 0 (negative for poles); requires nonzero.
    int valuation() const { return num_.min_exp() - den_.min_exp(); }

    RatFun operator-() const {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFun operator+(const RatFun &a, const RatFun &b) {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        if (a.den_ == b.den_) {
            RatFun r;
            r.num_ = a.num_ + b.num_;
            r.den_ = a.den_;
            if (!a.is_polynomial())
                r.normalize();
            return r;
        }
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun &a, const RatFun &b) { return a + (-b); }
    friend RatFun operator*(const RatFun &a, const RatFun &b) {
        if (a.is_zero() || b.is_zero())
            return RatFun();
        if (a.is_polynomial() && b.is_polynomial())
            return RatFun(a.num_ * b.num_);
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun &a, const RatFun &b) {
        if (b.is_zero())
            throw PreconditionError("division by zero rational function");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFun &operator+=(const RatFun &o) { return *this = *this + o; }
    RatFun &operator-=(const RatFun &o) { return *this = *this - o; }
    RatFun &operator*=(const RatFun &o) { return *this = *this * o; }
    RatFun &operator/=(const RatFun &o) { return *this = *this / o; }
    friend bool operator==(const RatFun &a, const RatFun &b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFun &a, const RatFun &b) { return !(a == b); }

    std::string to_string() const {
        if (is_polynomial())
            return num_.to_string("s");
        return "(" + num_.to_string("s") + ")/(" + den_.to_string("s") + ")";
    }

  private:
    SPoly num_, den_;

    static void check_poly(const SPoly &p) {
        if (!p.is_zero() && p.min_exp() < 0)
            throw PreconditionError("rational function parts must be polynomials in s");
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = SPoly(Scalar(1));
            return;
        }
        SPoly g = poly_gcd(num_, den_);
        if (!(g.is_monomial() && g.min_exp() == 0)) {
            num_ = exact_quotient(num_, g);
            den_ = exact_quotient(den_, g);
        }
        Scalar lead = den_.leading();
        if (!lead.is_one()) {
            Scalar inv = lead.inverse();
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }
};

inline bool is_zero(const RatFun &f) { return f.is_zero(); }

} // namespace nahodge

#pragma once

#include <complex>
#include <string>

#include "ktj/twist_laurent.hpp"

namespace ktj {

/// Quotient of two TwistLaurent polynomials.
///
/// Kept normalized: nonzero denominator, joint monomial factor removed, and
/// the denominator's leading coefficient positive. Full polynomial GCDs are
/// not computed; equality is decided by cross-multiplication.
class RatFun {
public:
    RatFun() : num_(TwistLaurent::zero()), den_(TwistLaurent::one()) {}
    explicit RatFun(TwistLaurent n) : num_(std::move(n)), den_(TwistLaurent::one()) {}
    RatFun(TwistLaurent n, TwistLaurent d);
    static RatFun from_int(long v) { return RatFun(TwistLaurent::constant(Rat(v))); }
    static RatFun one() { return RatFun(TwistLaurent::one()); }

    const TwistLaurent& num() const { return num_; }
    const TwistLaurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    RatFun operator-() const;
    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const; // throws DivisionByZero
    RatFun& operator+=(const RatFun& o) { *this = *this + o; return *this; }
    RatFun& operator*=(const RatFun& o) { *this = *this * o; return *this; }

    RatFun inverse() const;
    RatFun pow(int n) const; // negative n inverts first

    // Cross-multiplied equality: a/b == c/d  iff  a*d == c*b.
    bool operator==(const RatFun& o) const { return num_ * o.den_ == o.num_ * den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    // Evaluate at a point where the denominator does not vanish; throws
    // PoleAtPoint otherwise (use jet_eval to take the limit).
    std::complex<double> eval_exact(std::complex<double> A,
                                    HBranch branch = HBranch::Principal) const;

    // Exact polynomial extraction: num / den by long division, throwing
    // DomainError when the quotient is not a polynomial.
    TwistLaurent as_polynomial() const;

    std::string str() const;

private:
    void normalize();
    TwistLaurent num_;
    TwistLaurent den_;
};

} // namespace ktj

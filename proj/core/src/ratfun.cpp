#include "ktj/ratfun.hpp"

#include <algorithm>
#include <cmath>

#include "ktj/errors.hpp"

namespace ktj {

RatFun::RatFun(TwistLaurent n, TwistLaurent d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw DivisionByZero("RatFun: zero denominator");
    normalize();
}

void RatFun::normalize() {
    if (num_.is_zero()) {
        den_ = TwistLaurent::one();
        return;
    }
    int shift = std::min(num_.min_exp2(), den_.min_exp2());
    if (shift != 0) {
        num_ = num_.shifted(Rat(1), -shift);
        den_ = den_.shifted(Rat(1), -shift);
    }
    const auto& lead = *std::prev(den_.terms().end());
    if (lead.second < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return RatFun(num_ + o.num_, den_);
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
    if (is_zero() || o.is_zero()) return RatFun();
    return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
    if (o.is_zero()) throw DivisionByZero("RatFun: division by zero");
    if (is_zero()) return RatFun();
    return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::inverse() const {
    if (is_zero()) throw DivisionByZero("RatFun: inverse of zero");
    return RatFun(den_, num_);
}

RatFun RatFun::pow(int n) const {
    RatFun base = n < 0 ? inverse() : *this;
    int k = n < 0 ? -n : n;
    RatFun r = RatFun::one();
    while (k > 0) {
        if (k & 1) r *= base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

namespace {

double abs_scale(const TwistLaurent& p, std::complex<double> A) {
    double s = 0.0;
    double r = std::abs(A);
    for (const auto& [k, c] : p.terms()) {
        s = std::max(s, std::abs(to_double(c)) * std::pow(r, 0.5 * k.second));
    }
    return s;
}

} // namespace

std::complex<double> RatFun::eval_exact(std::complex<double> A, HBranch branch) const {
    std::complex<double> d = den_.eval(A, branch);
    double scale = abs_scale(den_, A);
    if (std::abs(d) <= 1e-9 * std::max(scale, 1e-300)) {
        throw PoleAtPoint("RatFun: denominator vanishes at evaluation point");
    }
    return num_.eval(A, branch) / d;
}

TwistLaurent RatFun::as_polynomial() const {
    if (den_.is_one()) return num_;
    return num_.divide_exact(den_);
}

std::string RatFun::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

} // namespace ktj

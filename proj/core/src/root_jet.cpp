#include "ktj/root_jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "ktj/errors.hpp"

namespace ktj {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Strip leading coefficients that are numerically zero relative to the
// per-order magnitude of the contributions that were summed into them.
// Returns the number stripped, or -1 if everything vanished.
int strip_leading(std::vector<cplx>& c, const std::vector<double>& scale) {
    std::size_t i = 0;
    while (i < c.size() &&
           std::abs(c[i]) <= kJetZeroThreshold * std::max(scale[i], 1e-300))
        ++i;
    if (i == c.size()) return -1;
    c.erase(c.begin(), c.begin() + static_cast<long>(i));
    return static_cast<int>(i);
}

} // namespace

RootJet RootJet::zero(int N) { return RootJet(N, true, std::numeric_limits<int>::max() / 2); }

RootJet RootJet::constant(cplx v, int N, int prec) {
    std::vector<cplx> c(static_cast<std::size_t>(std::max(prec, 1)), cplx{0, 0});
    c[0] = v;
    return RootJet(N, 0, std::move(c));
}

RootJet RootJet::one(int N, int prec) { return constant(cplx{1, 0}, N, prec); }

cplx RootJet::center() const { return std::polar(1.0, kPi / (2.0 * N_)); }

int RootJet::valuation() const {
    if (exact_zero_) throw DomainError("RootJet: exact zero has no valuation");
    if (coeffs_.empty()) throw PrecisionExhausted("RootJet: valuation undecidable");
    return val_;
}

cplx RootJet::finite_value() const {
    if (exact_zero_) return {0, 0};
    if (coeffs_.empty()) {
        if (val_ >= 1) return {0, 0}; // f = O((A-zeta)^w), w >= 1, limit is 0
        throw PrecisionExhausted("RootJet: value undecidable at this precision");
    }
    if (val_ > 0) return {0, 0};
    if (val_ == 0) return coeffs_[0];
    throw PoleAtPoint("RootJet: negative valuation");
}

RootJet RootJet::from_poly(const TwistLaurent& p, int N, int prec) {
    if (p.is_zero()) return zero(N);
    prec = std::max(prec, 1);
    const cplx zeta = std::polar(1.0, kPi / (2.0 * N));
    const double theta = kPi / (2.0 * N);

    // A nonzero polynomial vanishes at zeta to order at most its degree as a
    // polynomial in A^{1/2}; search up to that bound.
    const int bound = (p.max_exp2() - p.min_exp2()) + 2 + prec;
    int m = prec;
    for (;;) {
        std::vector<cplx> c(static_cast<std::size_t>(m), cplx{0, 0});
        std::vector<double> scale(static_cast<std::size_t>(m), 0.0);
        for (const auto& [k, coefr] : p.terms()) {
            double e = 0.5 * k.second + (k.first == 1 ? 1.5 : 0.0);
            cplx factor = to_double(coefr) * std::polar(1.0, theta * e);
            if (k.first == 1) factor *= cplx{0, 1};
            // Taylor: A^e = sum_j C(e,j) zeta^{e-j} (A-zeta)^j
            double binom = 1.0;
            cplx zpow{1, 0};
            for (int j = 0; j < m; ++j) {
                if (j > 0) {
                    binom *= (e - (j - 1)) / j;
                    zpow /= zeta;
                }
                cplx contrib = factor * binom * zpow;
                c[static_cast<std::size_t>(j)] += contrib;
                scale[static_cast<std::size_t>(j)] += std::abs(contrib);
            }
        }
        int stripped = strip_leading(c, scale);
        if (stripped >= 0) {
            if (static_cast<int>(c.size()) > prec) c.resize(static_cast<std::size_t>(prec));
            return RootJet(N, stripped, std::move(c));
        }
        if (m >= bound) {
            // All orders up to the degree bound vanish: numerically zero poly.
            return RootJet(N, false, m);
        }
        m = std::min(2 * m + 4, bound);
    }
}

RootJet RootJet::operator-() const {
    RootJet r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

RootJet RootJet::operator*(const RootJet& o) const {
    assert(N_ == o.N_);
    if (exact_zero_ || o.exact_zero_) return zero(N_);
    if (is_ambiguous() || o.is_ambiguous()) {
        // Either factor is O((A-zeta)^val), so the product vanishes to at
        // least the combined order but its leading term is unknown.
        long w = std::min<long>(static_cast<long>(val_) + o.val_,
                                std::numeric_limits<int>::max() / 2);
        return RootJet(N_, false, static_cast<int>(w));
    }
    int p = std::min(precision(), o.precision());
    std::vector<cplx> c(static_cast<std::size_t>(p), cplx{0, 0});
    for (int i = 0; i < p; ++i)
        for (int j = 0; i + j < p; ++j)
            c[static_cast<std::size_t>(i + j)] += coeffs_[static_cast<std::size_t>(i)] *
                                                  o.coeffs_[static_cast<std::size_t>(j)];
    return RootJet(N_, val_ + o.val_, std::move(c));
}

RootJet RootJet::operator/(const RootJet& o) const {
    assert(N_ == o.N_);
    if (o.exact_zero_) throw DivisionByZero("RootJet: division by zero jet");
    if (o.is_ambiguous()) throw PrecisionExhausted("RootJet: divisor leading term unknown");
    if (exact_zero_) return zero(N_);
    if (is_ambiguous()) {
        return RootJet(N_, false, val_ - o.val_);
    }
    int p = std::min(precision(), o.precision());
    std::vector<cplx> d(static_cast<std::size_t>(p), cplx{0, 0});
    for (int j = 0; j < p; ++j) {
        cplx acc = coeffs_[static_cast<std::size_t>(j)];
        for (int k = 0; k < j; ++k)
            acc -= d[static_cast<std::size_t>(k)] * o.coeffs_[static_cast<std::size_t>(j - k)];
        d[static_cast<std::size_t>(j)] = acc / o.coeffs_[0];
    }
    return RootJet(N_, val_ - o.val_, std::move(d));
}

RootJet RootJet::operator+(const RootJet& o) const {
    assert(N_ == o.N_);
    if (exact_zero_) return o;
    if (o.exact_zero_) return *this;

    // Window of orders each side knows about.
    long lo1 = val_, hi1 = is_ambiguous() ? val_ : val_ + precision();
    long lo2 = o.val_, hi2 = o.is_ambiguous() ? o.val_ : o.val_ + o.precision();
    long lo = std::min(lo1, lo2);
    long hi = std::min(hi1, hi2);
    // A side that vanishes beyond the other's window does not restrict it.
    if (is_ambiguous() && lo1 >= hi2) return o;
    if (o.is_ambiguous() && lo2 >= hi1) return *this;
    if (lo2 >= hi1) return *this;
    if (lo1 >= hi2) return o;
    if (hi <= lo) throw PrecisionExhausted("RootJet: sum window empty");

    std::vector<cplx> c(static_cast<std::size_t>(hi - lo), cplx{0, 0});
    std::vector<double> scale(static_cast<std::size_t>(hi - lo), 0.0);
    auto accumulate = [&](const RootJet& x) {
        if (x.is_ambiguous()) return;
        for (int j = 0; j < x.precision(); ++j) {
            long ord = x.val_ + j;
            if (ord >= hi) break;
            c[static_cast<std::size_t>(ord - lo)] += x.coeffs_[static_cast<std::size_t>(j)];
            scale[static_cast<std::size_t>(ord - lo)] +=
                std::abs(x.coeffs_[static_cast<std::size_t>(j)]);
        }
    };
    accumulate(*this);
    accumulate(o);
    int stripped = strip_leading(c, scale);
    if (stripped < 0) return RootJet(N_, false, static_cast<int>(hi));
    return RootJet(N_, static_cast<int>(lo) + stripped, std::move(c));
}

RootJet RootJet::operator-(const RootJet& o) const { return *this + (-o); }

RootJet RootJet::pow(int n) const {
    if (n < 0) return RootJet::one(N_, std::max(precision(), 1)) / this->pow(-n);
    RootJet r = RootJet::one(N_, std::max(precision(), 1));
    RootJet base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

RootJet jet_eval(const RatFun& f, int N, int precision) {
    if (f.is_zero()) return RootJet::zero(N);
    RootJet num = RootJet::from_poly(f.num(), N, precision);
    RootJet den = RootJet::from_poly(f.den(), N, precision);
    return num / den;
}

} // namespace ktj

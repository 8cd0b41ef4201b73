#pragma once

#include <complex>
#include <vector>

#include "ktj/ratfun.hpp"
#include "ktj/twist_laurent.hpp"

namespace ktj {

using cplx = std::complex<double>;

/// Truncated power-series expansion at zeta_N = e^{i pi / 2N}, tracking the
/// order of vanishing so poles and zeros can be cancelled exactly.
///
/// A jet is one of
///   - a regular jet: f = sum_j c_j (A - zeta)^{val + j} with c_0 != 0,
///   - the exact zero jet (from the zero polynomial),
///   - an ambiguous zero: every computed coefficient vanished, so only
///     f = O((A - zeta)^window) is known.
/// Ambiguity surfaces as PrecisionExhausted whenever a decision needs the
/// leading coefficient; callers retry at higher precision.
class RootJet {
public:
    static RootJet zero(int N);
    static RootJet one(int N, int prec);
    static RootJet constant(cplx v, int N, int prec);
    static RootJet from_poly(const TwistLaurent& p, int N, int prec);

    int N() const { return N_; }
    cplx center() const;
    bool is_exact_zero() const { return exact_zero_; }
    bool is_ambiguous() const { return !exact_zero_ && coeffs_.empty(); }
    int precision() const { return static_cast<int>(coeffs_.size()); }

    // Order of vanishing (negative = pole). Throws PrecisionExhausted for an
    // ambiguous zero and DomainError for the exact zero.
    int valuation() const;

    // Limit value at zeta_N: c_0 when valuation is 0, 0 when it is positive.
    // Throws PoleAtPoint for negative valuation, PrecisionExhausted when the
    // zero/nonzero decision is out of reach.
    cplx finite_value() const;

    cplx coeff(int j) const { return coeffs_.at(j); }

    RootJet operator-() const;
    RootJet operator+(const RootJet& o) const;
    RootJet operator-(const RootJet& o) const;
    RootJet operator*(const RootJet& o) const;
    RootJet operator/(const RootJet& o) const;
    RootJet pow(int n) const;

private:
    RootJet(int N, int val, std::vector<cplx> coeffs)
        : N_(N), val_(val), coeffs_(std::move(coeffs)) {}
    RootJet(int N, bool exact, int window) : N_(N), val_(window), exact_zero_(exact) {}

    int N_ = 0;
    // valuation for a regular jet; known vanishing window for an ambiguous zero
    int val_ = 0;
    std::vector<cplx> coeffs_;
    bool exact_zero_ = false;
};

// Relative magnitude below which a computed series coefficient is treated as
// an exact cancellation.
inline constexpr double kJetZeroThreshold = 1e-9;

/// Jet of a rational function at zeta_N: valuation is num order minus den
/// order, coefficients from truncated series division.
RootJet jet_eval(const RatFun& f, int N, int precision);

} // namespace ktj

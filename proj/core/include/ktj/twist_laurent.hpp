#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "ktj/rational.hpp"

namespace ktj {

// Which square root of -A^3 the unit h evaluates to. Principal means
// h = i * A^{3/2} with A^{3/2} = e^{3i\theta/2} for A = e^{i\theta}, theta in (0, pi].
enum class HBranch { Principal, Negative };

/// Laurent polynomial in A^{1/2} over Q, extended by a unit h with h^2 = -A^3.
///
/// Terms are keyed by (h-grade, doubled exponent of A); h-grade is 0 or 1
/// because h^2 is rewritten eagerly. The representation is canonical: no zero
/// coefficients are stored, so operator== is structural equality.
class TwistLaurent {
public:
    using Key = std::pair<int, int>; // (hgrade, 2*exponent)
    using Terms = std::map<Key, Rat>;

    TwistLaurent() = default;

    static TwistLaurent zero() { return {}; }
    static TwistLaurent one() { return monomial(Rat(1), 0, 0); }
    static TwistLaurent constant(const Rat& c) { return monomial(c, 0, 0); }
    // c * h^hgrade * A^{exp2/2}
    static TwistLaurent monomial(const Rat& c, int exp2, int hgrade = 0);
    static TwistLaurent a_pow(int exp2) { return monomial(Rat(1), exp2, 0); }
    static TwistLaurent h_unit() { return monomial(Rat(1), 0, 1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    TwistLaurent operator-() const;
    TwistLaurent operator+(const TwistLaurent& o) const;
    TwistLaurent operator-(const TwistLaurent& o) const;
    TwistLaurent operator*(const TwistLaurent& o) const;
    TwistLaurent& operator+=(const TwistLaurent& o);
    TwistLaurent& operator-=(const TwistLaurent& o);
    TwistLaurent& operator*=(const TwistLaurent& o) { *this = *this * o; return *this; }

    TwistLaurent scaled(const Rat& c) const;
    // multiply by c * h^hgrade * A^{exp2/2}
    TwistLaurent shifted(const Rat& c, int exp2, int hgrade = 0) const;
    TwistLaurent pow(int n) const; // n >= 0

    bool operator==(const TwistLaurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const TwistLaurent& o) const { return !(*this == o); }

    // Smallest/largest doubled A-exponent over all terms (ignoring h-grade).
    // Undefined on the zero polynomial.
    int min_exp2() const;
    int max_exp2() const;
    bool has_h() const;

    std::complex<double> eval(std::complex<double> A,
                              HBranch branch = HBranch::Principal) const;

    // Exact polynomial division: returns q with *this == q * d, throwing
    // DomainError when the division is not exact. Requires h-free operands.
    TwistLaurent divide_exact(const TwistLaurent& d) const;

    std::string str() const;

private:
    void add_term(const Key& k, const Rat& c);
    Terms terms_;
};

inline std::complex<double> eval_h(std::complex<double> A, HBranch branch) {
    std::complex<double> r = std::complex<double>(0.0, 1.0) * std::pow(A, 1.5);
    return branch == HBranch::Principal ? r : -r;
}

} // namespace ktj

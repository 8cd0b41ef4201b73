#pragma once

#include <map>
#include <memory>
#include <vector>

#include "ktj/qsymbols.hpp"
#include "ktj/ratfun.hpp"
#include "ktj/root_jet.hpp"

namespace ktj {

/// Per-root cache of quantum integer and factorial jets, shared across the
/// evaluation of one multisum.
class JetCache {
public:
    JetCache(int N, int prec) : N_(N), prec_(prec) {}
    int N() const { return N_; }
    int precision() const { return prec_; }
    const RootJet& qint_jet(int k);
    const RootJet& qfact_jet(int k);

private:
    int N_;
    int prec_;
    std::vector<std::unique_ptr<RootJet>> int_jets_;
    std::vector<std::unique_ptr<RootJet>> fact_jets_;
};

/// A signed monomial times a product of quantum integers and factorials with
/// integer exponents: coef * h^h * A^{e2/2} * prod [k]^p * prod [k]!^q.
///
/// This is the exact shape of every summand in the recoupling formulas, and
/// keeping it factored makes jets cheap (products of cached jets) and keeps
/// symbolic common denominators explicit.
struct QFactored {
    Rat coef{1};
    int mono_e2 = 0;
    int mono_h = 0; // 0 or 1 after h^2 reduction
    std::map<int, int> int_pows;  // [k]^p, k >= 2
    std::map<int, int> fact_pows; // [k]!^p, k >= 2

    static QFactored zero() { QFactored f; f.coef = 0; return f; }
    bool is_zero() const { return coef == 0; }

    QFactored& mul_int(int k, int p);  // multiply by [k]^p (k >= 0; [1]=1, [0] forbidden)
    QFactored& mul_fact(int k, int p); // multiply by [k]!^p
    QFactored& mul_mono(const Rat& c, int e2, int hgrade = 0);
    QFactored& operator*=(const QFactored& o);
    QFactored operator*(const QFactored& o) const;
    QFactored pow(int n) const; // any integer n

    RatFun to_ratfun() const;
    RootJet jet(JetCache& cache) const;
    std::complex<double> eval(std::complex<double> A, HBranch branch = HBranch::Principal) const;

    // Numerator/denominator polynomials against a caller-chosen denominator
    // exponent profile (used to put many summands over one denominator).
    TwistLaurent numerator_against(const std::map<int, int>& den_int,
                                   const std::map<int, int>& den_fact) const;

    // Pole bookkeeping for the augmentation bound: count of quantum factorial
    // (and integer) factors in the denominator, and the largest argument
    // appearing anywhere.
    int denominator_factor_count() const;
    int max_argument() const;
};

/// theta(a,b,c) as a single factored product; requires admissibility.
QFactored theta_factored(int a, int b, int c);
/// <N> = (-1)^{N-1}[N].
QFactored unknot_factored(int N);
/// Ring coefficient (-1)^{N-1}[kN]/[k].
QFactored ring_factored(int k, int N);
/// Half twist coefficient on a color-k edge.
QFactored halftwist_factored(int k, int sign);

/// Tetrahedron value as prefactor * sum of factored z-terms.
struct TetFactored {
    QFactored prefactor;
    std::vector<QFactored> terms;

    RatFun to_ratfun() const;
    RootJet jet(JetCache& cache) const;
    std::complex<double> eval(std::complex<double> A, HBranch branch = HBranch::Principal) const;
};
TetFactored tet_factored(const TetLabels& labels);

/// Expanded numerator over a factored denominator profile of quantum integers
/// and factorials. Sums stay cheap because denominators combine by taking
/// exponent maxima instead of multiplying polynomials.
struct FactoredRatio {
    TwistLaurent num = TwistLaurent::one();
    std::map<int, int> den_ints;  // [k]^p, p > 0
    std::map<int, int> den_facts; // [k]!^p, p > 0

    static FactoredRatio one() { return {}; }
    static FactoredRatio from_qfactored(const QFactored& q);

    bool is_zero() const { return num.is_zero(); }
    FactoredRatio& operator*=(const FactoredRatio& o);
    void add(const FactoredRatio& o);
    RatFun to_ratfun() const;
};

/// Tetrahedron value as a FactoredRatio over one per-tet denominator; the
/// z-terms are expanded with consecutive-quantum-integer ratios instead of
/// full factorial quotients.
FactoredRatio tet_factored_ratio(const TetLabels& labels);

} // namespace ktj

#include <cmath>
#include <complex>

#include "doctest.h"
#include "ktj/errors.hpp"
#include "ktj/qfactored.hpp"
#include "ktj/qsymbols.hpp"

using namespace ktj;

namespace {
const double kPi = 3.14159265358979323846;
std::complex<double> zeta(int N) { return std::polar(1.0, kPi / (2.0 * N)); }
} // namespace

TEST_CASE("quantum integers and factorials") {
    CHECK(qint_poly(0).is_zero());
    CHECK(qint_poly(1) == TwistLaurent::one());
    CHECK(qint_poly(2) == TwistLaurent::a_pow(4) + TwistLaurent::a_pow(-4));
    CHECK(qfact_poly(0) == TwistLaurent::one());
    CHECK(qbinom_poly(1, 0) == TwistLaurent::one());
    CHECK(qbinom_poly(1, 1) == TwistLaurent::one());
    CHECK(qbinom_poly(2, 1) == qint_poly(2));
    CHECK_THROWS_AS(qbinom_poly(3, 4), DomainError);
    CHECK_THROWS_AS(qbinom_poly(3, -1), DomainError);
    // divisibility is exact, not just numerical
    CHECK(qbinom_poly(10, 4) * qfact_poly(4) * qfact_poly(6) == qfact_poly(10));
}

TEST_CASE("unknot values") {
    CHECK(unknot_poly(1) == TwistLaurent::one());
    CHECK(unknot_poly(2) == -(TwistLaurent::a_pow(4) + TwistLaurent::a_pow(-4)));
    CHECK(unknot_poly(3) ==
          TwistLaurent::a_pow(8) + TwistLaurent::one() + TwistLaurent::a_pow(-8));
}

TEST_CASE("admissibility") {
    CHECK(admissible(1, 1, 1));
    CHECK_FALSE(admissible(2, 2, 2));
    for (int N = 1; N <= 9; ++N) {
        CHECK(admissible(N, N, N) == (N % 2 == 1));
    }
    CHECK(admissible(2, 2, 3));
    CHECK_FALSE(admissible(1, 1, 3));
}

TEST_CASE("theta values") {
    CHECK(theta_value(1, 1, 1) == RatFun::one());
    // theta(3,3,3) = -[4][3]/[2]^2
    RatFun expect(-(qint_poly(4) * qint_poly(3)), qint_poly(2) * qint_poly(2));
    CHECK(theta_value(3, 3, 3) == expect);
    CHECK_THROWS_AS(theta_value(2, 2, 2), InadmissibleTriple);
}

TEST_CASE("theta(N,N,N)/<N> -> 1 at zeta_N for odd N") {
    // jet_eval on the full symbolic quotient. Small N only: the expanded
    // factorial products cancel so heavily at zeta_N that beyond N ~ 11 the
    // true leading coefficient drops under double rounding noise.
    for (int N = 3; N <= 7; N += 2) {
        RatFun f = theta_value(N, N, N) / RatFun(unknot_poly(N));
        auto j = jet_eval(f, N, 4);
        CHECK(j.valuation() == 0);
        CHECK(std::abs(j.finite_value() - std::complex<double>(1, 0)) <= 1e-9);
    }
    // factored jets for the full range (same arithmetic, cached factor jets)
    for (int N = 3; N <= 51; N += 2) {
        JetCache cache(N, 4);
        auto j = theta_factored(N, N, N).jet(cache) / RootJet::from_poly(unknot_poly(N), N, 4);
        CHECK(j.valuation() == 0);
        CHECK(std::abs(j.finite_value() - std::complex<double>(1, 0)) <= 1e-9);
    }
}

TEST_CASE("tet values") {
    CHECK(tet_value(TetLabels::all(1)) == RatFun::one());
    CHECK_THROWS_AS(tet_value(TetLabels::all(2)), InadmissibleTriple);

    // all colors 3 at zeta_3, over <3>: the normalized six-j number, which is 2
    RatFun f = tet_value(TetLabels::all(3)) / RatFun(unknot_poly(3));
    auto j = jet_eval(f, 3, 4);
    CHECK(j.valuation() == 0);
    CHECK(std::abs(j.finite_value() - std::complex<double>(2, 0)) <= 1e-9);
}

TEST_CASE("tet(N..N)/<N> at zeta_N equals sixj_N via the factored jet path") {
    for (int N = 3; N <= 31; N += 2) {
        JetCache cache(N, 4);
        auto tet = tet_factored(TetLabels::all(N));
        RootJet j = tet.jet(cache);
        RootJet u = RootJet::from_poly(unknot_poly(N), N, 4);
        auto r = j / u;
        CHECK(r.valuation() == 0);
        double expect = sixj_value(N);
        CHECK(std::abs(r.finite_value() - std::complex<double>(expect, 0)) <=
              1e-9 * std::max(1.0, expect));
    }
}

TEST_CASE("halftwist coefficients") {
    CHECK(halftwist_coeff(2, +1) == TwistLaurent::h_unit());
    CHECK(halftwist_coeff(3, +1) == TwistLaurent::monomial(Rat(-1), 8));
    CHECK(halftwist_coeff(3, -1) * halftwist_coeff(3, +1) == TwistLaurent::one());
    for (int k = 2; k <= 7; ++k) {
        CHECK(halftwist_coeff(k, -1) * halftwist_coeff(k, +1) == TwistLaurent::one());
    }
}

TEST_CASE("halftwist(N,+) at zeta_N equals phi_N, pinning the h branch") {
    for (int N = 1; N <= 51; N += 2) {
        auto v = halftwist_coeff(N, +1).eval(zeta(N));
        CHECK(std::abs(v - phi_N(N)) < 1e-12);
    }
}

TEST_CASE("ring coefficients at the root") {
    auto near = [](std::complex<double> a, std::complex<double> b) {
        return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
    };
    CHECK(near(jet_eval(ring_coeff(3, 5), 5, 4).finite_value(), {0, 0}));
    CHECK(near(jet_eval(ring_coeff(5, 5), 5, 4).finite_value(), {5, 0}));
    CHECK(near(jet_eval(ring_coeff(6, 3), 3, 4).finite_value(), {3, 0}));
    CHECK(near(ring_coeff_at_root(3, 5), {0, 0}));
    CHECK(near(ring_coeff_at_root(5, 5), {5, 0}));
    CHECK(near(ring_coeff_at_root(6, 3), {3, 0}));
}

TEST_CASE("ring lemma closed form matches jets") {
    for (int N = 3; N <= 21; N += 2) {
        for (int k = 1; k <= 4 * N; ++k) {
            auto j = jet_eval(ring_coeff(k, N), N, 4);
            auto expect = ring_coeff_at_root(k, N);
            CHECK(std::abs(j.finite_value() - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("phi and sixj") {
    CHECK_THROWS_AS(phi_N(4), DomainError);
    CHECK_THROWS_AS(sixj_value(6), DomainError);
    CHECK(sixj_value(1) == doctest::Approx(1.0));
    CHECK(sixj_value(3) == doctest::Approx(2.0));
    double golden = 2.0 * std::cos(kPi / 5.0);
    CHECK(sixj_value(5) == doctest::Approx(2.0 + std::pow(golden, 4)).epsilon(1e-12));
    for (int N = 1; N <= 99; N += 2) {
        CHECK(std::abs(std::abs(phi_N(N)) - 1.0) < 1e-12);
    }
}

TEST_CASE("[i] positive at zeta_N and [N+j] = -[j]") {
    for (int N : {5, 9, 21, 51}) {
        for (int i = 1; i <= N - 1; ++i) CHECK(qint_at_root(i, N) > 0);
        for (int j = 1; j < N; ++j) {
            double lhs = qint_at_root(N + j, N);
            CHECK(lhs == doctest::Approx(-qint_at_root(j, N)).epsilon(1e-10));
            CHECK(lhs == doctest::Approx(-qint_at_root(N - j, N)).epsilon(1e-10));
        }
    }
}

TEST_CASE("factored products agree with direct ratfun arithmetic") {
    QFactored f = theta_factored(3, 5, 7);
    QFactored g = ring_factored(3, 5);
    QFactored prod = f * g;
    CHECK(prod.to_ratfun() == theta_value(3, 5, 7) * ring_coeff(3, 5));

    QFactored p = g.pow(3);
    CHECK(p.to_ratfun() == ring_coeff(3, 5).pow(3));
    QFactored inv = g.pow(-2);
    CHECK(inv.to_ratfun() == ring_coeff(3, 5).pow(-2));

    QFactored ht = halftwist_factored(4, +1);
    CHECK(ht.pow(-1).to_ratfun() == RatFun(halftwist_coeff(4, -1)));
}

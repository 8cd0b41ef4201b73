#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "ktj/errors.hpp"
#include "ktj/qsymbols.hpp"
#include "ktj/ratfun.hpp"
#include "ktj/root_jet.hpp"
#include "ktj/twist_laurent.hpp"

using namespace ktj;

namespace {

const double kPi = 3.14159265358979323846;

TwistLaurent random_poly(std::mt19937& rng, int max_deg2 = 40, int max_terms = 6,
                         bool allow_h = true) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> expd(-max_deg2, max_deg2);
    std::uniform_int_distribution<int> coefd(-5, 5);
    std::uniform_int_distribution<int> hd(0, allow_h ? 1 : 0);
    TwistLaurent p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        p += TwistLaurent::monomial(Rat(coefd(rng)), 2 * expd(rng), hd(rng));
    }
    return p;
}

} // namespace

TEST_CASE("poly_arith defining relations") {
    auto h = TwistLaurent::h_unit();
    CHECK(h * h == TwistLaurent::monomial(Rat(-1), 6)); // h^2 = -A^3
    CHECK((h * h + TwistLaurent::a_pow(6)).is_zero());  // h^2 + A^3 = 0

    auto two_cos = TwistLaurent::a_pow(4) + TwistLaurent::a_pow(-4); // A^2 + A^-2
    CHECK(two_cos * TwistLaurent::one() == two_cos);

    auto d = TwistLaurent::a_pow(4) - TwistLaurent::a_pow(-4);
    CHECK(d * two_cos == TwistLaurent::a_pow(8) - TwistLaurent::a_pow(-8));
}

TEST_CASE("poly_arith ring laws on random elements") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_poly(rng);
        auto b = random_poly(rng);
        auto c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("ratfun_arith basics") {
    std::mt19937 rng(777);
    auto x = RatFun(random_poly(rng) + TwistLaurent::one());
    auto y = RatFun(random_poly(rng) + TwistLaurent::a_pow(2));
    CHECK((x / y) * (y / x) == RatFun::one());
    CHECK(x + RatFun() == x);
    CHECK_THROWS_AS(x / RatFun(), DivisionByZero);

    // (A^4 - A^-4) / (A^2 - A^-2) = A^2 + A^-2
    RatFun q(TwistLaurent::a_pow(8) - TwistLaurent::a_pow(-8),
             TwistLaurent::a_pow(4) - TwistLaurent::a_pow(-4));
    CHECK(q == RatFun(TwistLaurent::a_pow(4) + TwistLaurent::a_pow(-4)));
}

TEST_CASE("eval_exact") {
    // A^2 + A^-2 at A = e^{i pi/10} -> 2 cos(pi/5)
    RatFun f(TwistLaurent::a_pow(4) + TwistLaurent::a_pow(-4));
    auto v = f.eval_exact(std::polar(1.0, kPi / 10.0));
    CHECK(std::abs(v - std::complex<double>(2.0 * std::cos(kPi / 5.0), 0.0)) < 1e-12);

    // h at A = e^{i pi / 2N} -> e^{i pi/2} e^{3 i pi / 4N}
    for (int N : {3, 5, 8}) {
        RatFun hv{TwistLaurent::h_unit()};
        auto got = hv.eval_exact(std::polar(1.0, kPi / (2.0 * N)));
        auto want = std::polar(1.0, kPi / 2.0 + 3.0 * kPi / (4.0 * N));
        CHECK(std::abs(got - want) < 1e-12);
    }

    // [n] near A -> 1 approaches n (classical limit)
    for (int n : {2, 3, 7}) {
        auto qn = qint_ratfun(n);
        auto v1 = qn.eval_exact(std::polar(1.0, 1e-7));
        CHECK(std::abs(v1 - std::complex<double>(n, 0.0)) < 1e-5);
    }

    // at the pole itself eval_exact refuses
    CHECK_THROWS_AS(qint_ratfun(5).eval_exact(std::complex<double>(1.0, 0.0)), PoleAtPoint);
}

TEST_CASE("jet_eval valuations at zeta_N") {
    // [5] at N=5: numerator vanishes, denominator does not -> simple zero
    auto j = jet_eval(qint_ratfun(5), 5, 4);
    CHECK(j.valuation() == 1);
    CHECK(j.finite_value() == std::complex<double>(0, 0));

    // ring coefficient (-1)^{N-1}[kN]/[k]
    auto ring = [](int k, int N) {
        RatFun r = qint_ratfun(k * N) / qint_ratfun(k);
        if (N % 2 == 0) r = -r;
        return r;
    };
    auto j35 = jet_eval(ring(3, 5), 5, 4);
    CHECK(j35.valuation() == 1);
    CHECK(std::abs(j35.finite_value()) < 1e-12);

    auto j55 = jet_eval(ring(5, 5), 5, 4);
    CHECK(j55.valuation() == 0);
    CHECK(std::abs(j55.finite_value() - std::complex<double>(5, 0)) < 1e-9);
}

TEST_CASE("[mN] vanishes to order exactly 1; [k] does not vanish when N does not divide k") {
    for (int N : {3, 5, 7, 11, 21}) {
        for (int m = 1; m <= 8; ++m) {
            auto j = jet_eval(qint_ratfun(m * N), N, 3);
            CHECK(j.valuation() == 1);
        }
        for (int k = 1; k <= 2 * N; ++k) {
            if (k % N == 0) continue;
            auto j = jet_eval(qint_ratfun(k), N, 3);
            CHECK(j.valuation() == 0);
        }
    }
}

TEST_CASE("jet of product equals product of jets") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        int N = 3 + 2 * (trial % 10);
        auto p = random_poly(rng, 20, 5);
        auto q = random_poly(rng, 20, 5);
        if (p.is_zero() || q.is_zero()) continue;
        int prec = 4;
        auto jp = RootJet::from_poly(p, N, prec);
        auto jq = RootJet::from_poly(q, N, prec);
        auto jpq = RootJet::from_poly(p * q, N, prec);
        auto prod = jp * jq;
        if (jpq.is_ambiguous() || prod.is_ambiguous()) continue;
        CHECK(jpq.valuation() == prod.valuation());
        double scale = std::max(std::abs(jpq.coeff(0)), 1.0);
        for (int j = 0; j < std::min(jpq.precision(), prod.precision()); ++j) {
            CHECK(std::abs(jpq.coeff(j) - prod.coeff(j)) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("jet value agrees with eval_exact when there is no pole") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        int N = 3 + 2 * (trial % 7);
        auto p = random_poly(rng, 16, 4) + TwistLaurent::one();
        RatFun f{p};
        auto j = jet_eval(f, N, 3);
        if (j.is_exact_zero() || j.is_ambiguous() || j.valuation() != 0) continue;
        auto direct = f.eval_exact(std::polar(1.0, kPi / (2.0 * N)));
        CHECK(std::abs(j.finite_value() - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
    }
}

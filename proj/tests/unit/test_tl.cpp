#include <vector>

#include "doctest.h"
#include "ktj/errors.hpp"
#include "ktj/qsymbols.hpp"
#include "ktj/tl.hpp"

using namespace ktj;

TEST_CASE("single loop evaluates to -A^2 - A^-2") {
    PlanarComposition d;
    d.stack(TLElement::cup());
    d.stack(TLElement::cap());
    RatFun v = evaluate(d);
    CHECK(v == RatFun(-(TwistLaurent::a_pow(4) + TwistLaurent::a_pow(-4))));
}

TEST_CASE("evaluate rejects open diagrams") {
    PlanarComposition d;
    d.stack(TLElement::cup());
    CHECK_THROWS_AS(evaluate(d), NotClosed);
    PlanarComposition wide;
    wide.strand_cap = 3;
    wide.stack(TLElement::identity(4));
    CHECK_THROWS_AS(evaluate(wide), TooLarge);
}

TEST_CASE("jones-wenzl projectors") {
    CHECK(jw(1).equals(TLElement::identity(1)));
    // jw(2) = id + (1/[2]) e, the sign forced by the loop value -A^2-A^-2
    TLElement expect = TLElement::identity(2) +
                       TLElement::e_gen().scaled(RatFun::one() / RatFun(qint_poly(2)));
    CHECK(jw(2).equals(expect));

    for (int n = 2; n <= 4; ++n) {
        CHECK(jw(n).compose(jw(n)).equals(jw(n)));
        // killed by caps in every position
        for (int i = 0; i + 2 <= n; ++i) {
            TLElement capper = TLElement::identity(i).tensor(TLElement::cap())
                                   .tensor(TLElement::identity(n - i - 2));
            CHECK(jw(n).compose(capper).is_zero());
        }
    }
}

TEST_CASE("closure of jw(N-1) is the colored unknot value") {
    for (int N = 1; N <= 5; ++N) {
        RatFun v = trace_closure(jw(N - 1));
        CHECK(v == RatFun(unknot_poly(N)));
    }
}

TEST_CASE("color-3 positive Mobius band") {
    RatFun v = bracket_twisted_edge(3, +1);
    TwistLaurent expect = -(TwistLaurent::a_pow(16) + TwistLaurent::a_pow(8) + TwistLaurent::one());
    CHECK(v.as_polynomial() == expect);
}

TEST_CASE("twisted band equals halftwist coefficient times untwisted, k <= 4") {
    for (int k = 2; k <= 4; ++k) {
        for (int s : {+1, -1}) {
            RatFun v = bracket_twisted_edge(k, s);
            RatFun expect = RatFun(halftwist_coeff(k, s)) * RatFun(unknot_poly(k));
            CHECK(v == expect);
        }
    }
    // two half twists compose
    CHECK(bracket_twisted_edge(3, 2) ==
          RatFun(halftwist_coeff(3, 1) * halftwist_coeff(3, 1)) * RatFun(unknot_poly(3)));
}

TEST_CASE("theta oracle equality for all admissible colorings with colors <= 3") {
    int checked = 0;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c) {
                if (!admissible(a, b, c)) continue;
                CHECK(bracket_theta(a, b, c) == theta_value(a, b, c));
                ++checked;
            }
    CHECK(checked > 0);
}

TEST_CASE("tet oracle equality for all admissible colorings with colors <= 3") {
    int checked = 0;
    for (int j1 = 1; j1 <= 3; ++j1)
        for (int j2 = 1; j2 <= 3; ++j2)
            for (int j3 = 1; j3 <= 3; ++j3)
                for (int j4 = 1; j4 <= 3; ++j4)
                    for (int j5 = 1; j5 <= 3; ++j5)
                        for (int j6 = 1; j6 <= 3; ++j6) {
                            TetLabels l{{j1, j2, j3, j4, j5, j6}};
                            if (!l.valid()) continue;
                            CHECK(bracket_tet(l) == tet_value(l));
                            ++checked;
                        }
    CHECK(checked > 0);
}

TEST_CASE("theta(1,1,1) via the empty-diagram convention") {
    CHECK(bracket_theta(1, 1, 1) == RatFun::one());
}

TEST_CASE("encircled edge matches the ring coefficient") {
    CHECK(bracket_encircled(2, 2) == ring_coeff(2, 2) * RatFun(unknot_poly(2)));
    CHECK(bracket_encircled(3, 2) == ring_coeff(3, 2) * RatFun(unknot_poly(3)));
    CHECK(bracket_encircled(2, 3) == ring_coeff(2, 3) * RatFun(unknot_poly(2)));
}

namespace {

// color-(x+1),(y+1) pair of projected strands, fused through color c
TLElement fused_pair(int x, int y, int cp) {
    TLElement ends = jw(x).tensor(jw(y));
    return ends.compose(vertex_merge(x, y, cp))
        .compose(jw(cp))
        .compose(vertex_split(cp, x, y))
        .compose(ends);
}

} // namespace

TEST_CASE("fusion identity at small colors, all closure patterns") {
    for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
            int x = a - 1, y = b - 1;
            TLElement lhs = jw(x).tensor(jw(y));
            // trace closure
            RatFun sum_trace;
            for (int c = std::abs(a - b) + 1; c <= a + b - 1; c += 2) {
                if (!admissible(a, b, c)) continue;
                RatFun coef = RatFun(unknot_poly(c)) / theta_value(a, b, c);
                sum_trace += coef * trace_closure(fused_pair(x, y, c - 1));
            }
            CHECK(trace_closure(lhs) == sum_trace);
            // plat closure when the width is even
            if ((x + y) % 2 == 0 && x + y > 0) {
                RatFun sum_plat;
                for (int c = std::abs(a - b) + 1; c <= a + b - 1; c += 2) {
                    if (!admissible(a, b, c)) continue;
                    RatFun coef = RatFun(unknot_poly(c)) / theta_value(a, b, c);
                    sum_plat += coef * plat_closure(fused_pair(x, y, c - 1));
                }
                CHECK(plat_closure(lhs) == sum_plat);
            }
        }
    }
}

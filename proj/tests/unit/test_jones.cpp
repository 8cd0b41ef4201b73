#include <cmath>
#include <complex>

#include "doctest.h"
#include "json.hpp"
#include "ktj/errors.hpp"
#include "ktj/jones.hpp"
#include "ktj/ktg_dsl.hpp"
#include "ktj/lobachevsky.hpp"
#include "ktj/qfactored.hpp"
#include "ktj/qsymbols.hpp"
#include "ktj/tl.hpp"

using namespace ktj;

namespace {

const MoveSequence kEmpty{};
MoveSequence seq_of(const std::string& text) { return parse_sequence(text); }

bool near(std::complex<double> a, std::complex<double> b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

} // namespace

TEST_CASE("build_expression: empty sequence is the all-N tetrahedron") {
    JonesExpr e = build_expression(kEmpty);
    REQUIRE(e.layers.size() == 1);
    CHECK(e.num_vars == 0);
    REQUIRE(e.layers[0].atoms.size() == 1);
    const Atom& a = e.layers[0].atoms[0];
    CHECK(a.kind == Atom::Kind::Tet);
    for (const auto& l : a.labels) CHECK(l.is_N());
}

TEST_CASE("build_expression: one unzip opens one fusion sum with rings") {
    JonesExpr e = build_expression(seq_of("tet\nU e1 rings=2\n"));
    REQUIRE(e.layers.size() == 2);
    REQUIRE(e.layers[0].binder.has_value());
    CHECK(e.layers[0].binder->a.is_N());
    CHECK(e.layers[0].binder->b.is_N());
    REQUIRE(e.layers[0].atoms.size() == 2);
    CHECK(e.layers[0].atoms[0].kind == Atom::Kind::Fusion);
    CHECK(e.layers[0].atoms[1].kind == Atom::Kind::Ring);
    CHECK(e.layers[0].atoms[1].exponent == 2);
    // terminal tetrahedron carries the variable on the unzipped edge slot
    const Atom& tet = e.layers[1].atoms[0];
    CHECK(tet.kind == Atom::Kind::Tet);
    CHECK(tet.labels[0] == Label::variable(0));
    for (int i = 1; i < 6; ++i) CHECK(tet.labels[static_cast<std::size_t>(i)].is_N());
}

TEST_CASE("build_expression: triangle contributes tet over theta") {
    JonesExpr e = build_expression(seq_of("tet\nA v1\n"));
    REQUIRE(e.layers.size() == 2);
    CHECK_FALSE(e.layers[0].binder.has_value());
    REQUIRE(e.layers[0].atoms.size() == 2);
    CHECK(e.layers[0].atoms[0].kind == Atom::Kind::Tet);
    CHECK(e.layers[0].atoms[1].kind == Atom::Kind::Theta);
    CHECK(e.layers[0].atoms[1].exponent == -1);
}

TEST_CASE("eval_generic: color 1 gives 1, even colors vanish on the tetrahedron") {
    for (const char* txt : {"tet\n", "tet\nA v1\n", "tet\nU e1\n", "tet\nA v1\nU e7\nU e3\n"}) {
        JonesExpr e = build_expression(seq_of(txt));
        CHECK(eval_generic_normalized(e, 1) == RatFun::one());
    }
    CHECK(eval_generic(build_expression(kEmpty), 2).is_zero());
}

TEST_CASE("theta sequence reproduces the closed theta invariant") {
    JonesExpr e = build_expression(seq_of("tet\nA v1\nU e7\nU e3\n"));
    // N = 3: J_3(theta) = -[4]/[2]^2
    RatFun expect3(-qint_poly(4), qint_poly(2) * qint_poly(2));
    CHECK(eval_generic_normalized(e, 3) == expect3);
    // general closed form (-1)^{3k} [3k+1]! [k]!^3 / ([2k]!^3 [2k+1]), N = 2k+1
    for (int N : {3, 5}) {
        int k = (N - 1) / 2;
        QFactored f;
        if (k % 2 != 0) f.coef = -1; // (-1)^{3k}
        f.mul_fact(3 * k + 1, 1);
        f.mul_fact(k, 3);
        f.mul_fact(2 * k, -3);
        f.mul_int(2 * k + 1, -1);
        CHECK(eval_generic_normalized(e, N) == f.to_ratfun());
    }
}

TEST_CASE("oracle agreement at generic A for small sequences") {
    // empty sequence against the brute-force tetrahedron diagram
    CHECK(eval_generic(build_expression(kEmpty), 3) == bracket_tet(TetLabels::all(3)));
    // theta sequence against the brute-force theta diagram
    JonesExpr theta = build_expression(seq_of("tet\nA v1\nU e7\nU e3\n"));
    CHECK(eval_generic(theta, 3) == bracket_theta(3, 3, 3));
    CHECK(eval_generic(theta, 2).is_zero()); // theta needs odd colors

    // two-loop (handcuff) sequence against a hand-built diagram:
    // loop, vertex, bar, vertex, loop. All-even colors have no admissible
    // vertex, so N = 2 vanishes without a diagram.
    JonesExpr cuff = build_expression(seq_of("tet\nU e1\n"));
    CHECK(eval_generic(cuff, 2).is_zero());
    for (int N : {3}) {
        int n = N - 1;
        PlanarComposition d;
        d.strand_cap = 6 * n + 2;
        TLElement::Matching nest(static_cast<std::size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
            nest[static_cast<std::size_t>(i)] = 2 * n - 1 - i;
            nest[static_cast<std::size_t>(2 * n - 1 - i)] = i;
        }
        d.stack(TLElement::from_matching(0, 2 * n, nest));
        d.stack(jw(n).tensor(TLElement::identity(n)));
        d.stack(vertex_merge(n, n, n));
        d.stack(jw(n));
        d.stack(vertex_split(n, n, n));
        d.stack(jw(n).tensor(TLElement::identity(n)));
        d.stack(TLElement::from_matching(2 * n, 0, nest));
        CHECK(eval_generic(cuff, N) == evaluate(d));
    }
}

TEST_CASE("eval_at_root: empty sequence gives sixj_N for odd colors, 0 for even") {
    for (int N = 3; N <= 9; N += 2) {
        auto v = eval_at_root(build_expression(kEmpty), N);
        CHECK(near(v, {sixj_value(N), 0}));
    }
    for (int N : {2, 4, 6}) {
        CHECK(eval_at_root(build_expression(kEmpty), N) == std::complex<double>(0, 0));
    }
}

TEST_CASE("one-unzip multisum at the root: sufficient rings reach the closed form") {
    // With a single ring the theta pole of the c=1 summand eats the ring zero
    // and the off-color terms survive: at N=3 the three summands contribute
    // 6 + 1 + 5 (hand computation via the degenerate tetrahedra).
    JonesExpr e1 = build_expression(seq_of("tet\nU e1 rings=1\n"));
    CHECK(near(eval_at_root(e1, 3), {12.0, 0}));
    // Two rings already exceed every pole of this sequence, so the closed
    // form N^r sixj_N with r = 2 appears.
    JonesExpr e2 = build_expression(seq_of("tet\nU e1 rings=2\n"));
    CHECK(near(eval_at_root(e2, 3), {9.0 * sixj_value(3), 0}));
    CHECK(near(eval_at_root(e2, 5), {25.0 * sixj_value(5), 0}));
}

TEST_CASE("augmented_closed_form") {
    CHECK(near(augmented_closed_form(kEmpty, 5), {sixj_value(5), 0}));
    CHECK(near(augmented_closed_form(seq_of("tet\nU e1 rings=1\n"), 3), {6, 0}));
    CHECK(augmented_closed_form(seq_of("tet\nU e1 rings=1\n"), 4) ==
          std::complex<double>(0, 0));
    CHECK_THROWS_AS(augmented_closed_form(seq_of("tet\nU e1\n"), 3), NotAugmented);
    // a half twist contributes phi_N
    auto v = augmented_closed_form(seq_of("tet\nH+ e2\nU e1 rings=1\n"), 5);
    CHECK(near(v, phi_N(5) * 5.0 * sixj_value(5)));
}

TEST_CASE("closed form equals the multisum at sufficient augmentation") {
    for (const char* txt : {"tet\nU e1\n", "tet\nH+ e2\nU e1\n", "tet\nA v1\nU e4\n"}) {
        MoveSequence seq = seq_of(txt);
        auto bound = sufficient_ring_count(seq);
        MoveSequence aug = augment(seq, bound.n);
        JonesExpr e = build_expression(aug);
        for (int N : {3, 5}) {
            auto lhs = eval_at_root(e, N);
            auto rhs = augmented_closed_form(aug, N);
            CHECK(near(lhs, rhs));
        }
        CHECK(eval_at_root(e, 4) == std::complex<double>(0, 0));
    }
}

TEST_CASE("sufficient_ring_count grows with unzips and is N-free by construction") {
    auto b0 = sufficient_ring_count(kEmpty);
    CHECK(b0.n >= 1);
    CHECK(b0.f == 13);
    auto b1 = sufficient_ring_count(seq_of("tet\nU e1\n"));
    CHECK(b1.n > b0.n);
    CHECK(b1.f == b0.f + 4);
    auto b2 = sufficient_ring_count(seq_of("tet\nA v1\nU e4\n"));
    CHECK(b2.f == 13 + 17 + 4);
}

TEST_CASE("delta property: non-N labels vanish to positive order after rings") {
    MoveSequence seq = seq_of("tet\nU e1\n");
    int n = sufficient_ring_count(seq).n;
    const int N = 5;
    JetCache cache(N, 4);
    for (int c = 1; c <= 2 * N - 1; c += 2) {
        TetLabels l{{c, N, N, N, N, N}};
        if (!l.valid()) continue;
        QFactored fr = unknot_factored(c);
        fr *= theta_factored(N, N, c).pow(-1);
        fr *= ring_factored(c, N).pow(n);
        RootJet summand = fr.jet(cache) * tet_factored(l).jet(cache);
        if (c == N) {
            CHECK(summand.valuation() <= 1); // survives normalization by <N>
        } else {
            CHECK(summand.valuation() > 1);
        }
    }
}

namespace {

// The true result of "tet; H+^h e1; U e1", built on the tetrahedron layout
// with the e1 channel doubled in place: the parent band's h half twists act
// on the two copies as halftwist_band(2n)^h, and the dissolved endpoint
// vertices connect the copies straight into the neighbouring edges.
RatFun unzip_truth_diagram(int N, int h) {
    int n = N - 1;
    PlanarComposition d;
    d.strand_cap = 8 * n + 4;
    d.stack(vertex_wiring_up(n, n, n).tensor(vertex_wiring_up(n, n, n)));
    {
        TLElement::Matching m(static_cast<std::size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
            m[static_cast<std::size_t>(i)] = 2 * n - 1 - i;
            m[static_cast<std::size_t>(2 * n - 1 - i)] = i;
        }
        TLElement e5cap = jw(n).tensor(TLElement::identity(n))
                              .compose(TLElement::from_matching(2 * n, 0, m));
        d.stack(TLElement::identity(2 * n).tensor(e5cap).tensor(TLElement::identity(2 * n)));
    }
    d.stack(TLElement::identity(n).tensor(jw(n)).tensor(jw(n)).tensor(TLElement::identity(n)));
    TLElement band = TLElement::identity(2 * n);
    for (int i = 0; i < std::abs(h); ++i)
        band = band.compose(halftwist_band(2 * n, h >= 0 ? 1 : -1));
    d.stack(TLElement::identity(n).tensor(band).tensor(TLElement::identity(n)));
    d.stack(jw(n).tensor(TLElement::identity(2 * n)).tensor(jw(n)));
    TLElement::Matching m(static_cast<std::size_t>(4 * n));
    for (int i = 0; i < n; ++i) {
        m[static_cast<std::size_t>(i)] = 2 * n - 1 - i;
        m[static_cast<std::size_t>(2 * n - 1 - i)] = i;
        m[static_cast<std::size_t>(2 * n + i)] = 4 * n - 1 - i;
        m[static_cast<std::size_t>(4 * n - 1 - i)] = 2 * n + i;
    }
    d.stack(TLElement::from_matching(4 * n, 0, m));
    return evaluate(d);
}

} // namespace

TEST_CASE("strict mode rejects twisted unzips, lenient matches the oracle") {
    MoveSequence tw = seq_of("tet\nH+ e1\nU e1\n");
    CHECK_THROWS_AS(build_expression(tw, TwistMode::Strict), TwistedUnzip);

    // even colors vanish: no admissible vertex
    CHECK(eval_generic(build_expression(tw, TwistMode::Lenient), 2).is_zero());
    // exact agreement with the in-place unzip diagrams, twisted and not
    for (int h : {0, 1, 2}) {
        std::string txt = "tet\n";
        for (int i = 0; i < h; ++i) txt += "H+ e1\n";
        txt += "U e1\n";
        JonesExpr e = build_expression(seq_of(txt), TwistMode::Lenient);
        CHECK(eval_generic(e, 3) == unzip_truth_diagram(3, h));
    }

    // at the root the lenient value still matches the closed form
    MoveSequence aug = augment(seq_of("tet\nH+ e5\nU e5\n"), sufficient_ring_count(tw).n);
    JonesExpr e = build_expression(aug, TwistMode::Lenient);
    for (int N : {3, 5}) {
        CHECK(near(eval_at_root(e, N), augmented_closed_form(aug, N)));
    }
}

TEST_CASE("verify_conjecture report") {
    MoveSequence seq = augment(seq_of("tet\nA v1\nU e4\n"), 1);
    auto rep = verify_conjecture(seq, {2, 3, 5, 7, 9, 11});
    CHECK(rep.stats.t == 1);
    CHECK(rep.target == doctest::Approx(4.0 * vol_oct()));
    CHECK(rep.original_conjecture_fails);
    CHECK(rep.so3_supported);
    bool saw_even = false;
    for (const auto& row : rep.rows) {
        if (row.even) saw_even = true;
        if (!row.even && row.N >= 3) CHECK(row.lhs > 0);
    }
    CHECK(saw_even);
    CHECK_THROWS_AS(verify_conjecture(seq_of("tet\nU e1\n"), {3}), NotAugmented);
}

TEST_CASE("jones JSON record") {
    MoveSequence seq = seq_of("tet\nU e1 rings=1\n");
    auto j = nlohmann::json::parse(jones_record_json(seq, 5, {44.2705, 0.0}, "closed_form"));
    CHECK(j["N"] == 5);
    CHECK(j["method"] == "closed_form");
    CHECK(j["stats"]["t"] == 0);
    CHECK(j["stats"]["u"] == 1);
    CHECK(j["stats"]["r"] == 1);
    CHECK(j.contains("sequence_hash"));
    CHECK(j["value_re"].get<double>() == doctest::Approx(44.2705));
    // deterministic hash for fixed input
    auto j2 = nlohmann::json::parse(jones_record_json(seq, 5, {44.2705, 0.0}, "closed_form"));
    CHECK(j["sequence_hash"] == j2["sequence_hash"]);
}

TEST_CASE("budget guard") {
    JonesExpr e = build_expression(seq_of("tet\nU e1\nU e5\n"));
    CHECK_THROWS_AS(eval_generic(e, 9, 3), BudgetExceeded);
}

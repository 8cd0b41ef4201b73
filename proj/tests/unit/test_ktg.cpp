#include <random>
#include <set>

#include "doctest.h"
#include "ktj/errors.hpp"
#include "ktj/ktg.hpp"
#include "ktj/ktg_dsl.hpp"

using namespace ktj;

namespace {

void check_well_formed(const Ktg& g) {
    std::set<int> seen_darts;
    for (const auto& [v, rot] : g.vertices) {
        for (int d : rot) {
            CHECK(seen_darts.insert(d).second); // each dart in exactly one slot
            REQUIRE(g.dart_vertex.count(d));
            CHECK(g.dart_vertex.at(d) == v);
            REQUIRE(g.dart_edge.count(d));
        }
    }
    for (const auto& [e, ed] : g.edges) {
        CHECK(ed.darts[0] != ed.darts[1]);
        for (int d : ed.darts) {
            REQUIRE(g.dart_edge.count(d));
            CHECK(g.dart_edge.at(d) == e);
            CHECK(seen_darts.count(d));
        }
    }
    CHECK(seen_darts.size() == 2 * g.edges.size());
}

MoveSequence parse_ok(const std::string& s) { return parse_sequence(s); }

// random valid sequence by replaying and picking legal moves
MoveSequence random_sequence(std::mt19937& rng, int max_moves = 8) {
    MoveSequence seq;
    Ktg g = standard_tetrahedron();
    std::uniform_int_distribution<int> nmoves(0, max_moves);
    int n = nmoves(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<Move> options;
        for (const auto& [v, rot] : g.vertices) {
            (void)rot;
            options.push_back(Move::triangle(v));
        }
        for (const auto& [e, ed] : g.edges) {
            (void)ed;
            options.push_back(Move::half_twist(e, +1));
            options.push_back(Move::half_twist(e, -1));
            auto [u, v] = g.endpoints(e);
            if (u != v) {
                std::uniform_int_distribution<int> ringd(0, 3);
                options.push_back(Move::unzip(e, ringd(rng)));
            }
        }
        if (options.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        Move m = options[pick(rng)];
        auto [next, tr] = apply_move(g, m);
        (void)tr;
        g = std::move(next);
        seq.moves.push_back(m);
    }
    return seq;
}

} // namespace

TEST_CASE("standard tetrahedron combinatorics") {
    Ktg g = standard_tetrahedron();
    CHECK(g.vertices.size() == 4);
    CHECK(g.edges.size() == 6);
    CHECK(g.circles.empty());
    CHECK(static_cast<int>(g.vertices.size()) - static_cast<int>(g.edges.size()) == -2);
    check_well_formed(g);
}

TEST_CASE("triangle move bookkeeping") {
    Ktg g = standard_tetrahedron();
    auto [g2, tr] = apply_move(g, Move::triangle(1));
    CHECK(g2.vertices.size() == 6);
    CHECK(g2.edges.size() == 9);
    CHECK(tr.new_vertices == std::array<int, 3>{5, 6, 7});
    CHECK(tr.new_edges == std::array<int, 3>{7, 8, 9});
    CHECK(tr.outer_edges == std::array<int, 3>{1, 2, 3});
    check_well_formed(g2);
    CHECK_THROWS_AS(apply_move(g, Move::triangle(99)), UnknownId);
}

TEST_CASE("half twists adjust and cancel") {
    Ktg g = standard_tetrahedron();
    auto [g2, t1] = apply_move(g, Move::half_twist(1, +1));
    CHECK(g2.edges.at(1).twist == 1);
    auto [g3, t2] = apply_move(g2, Move::half_twist(1, -1));
    CHECK(g3.edges.at(1).twist == 0);
    CHECK(g3.edges == g.edges);
    CHECK(g3.vertices == g.vertices);
}

TEST_CASE("unzip of a tetrahedron edge gives the two-loop graph") {
    Ktg g = standard_tetrahedron();
    auto [g2, tr] = apply_move(g, Move::unzip(1, 0));
    CHECK(g2.vertices.size() == 2);
    CHECK(g2.edges.size() == 3);
    CHECK(g2.circles.empty());
    // strands merged e2+e4 and e3+e6 into loops at v3 and v4
    int loops = 0;
    for (const auto& [e, ed] : g2.edges) {
        (void)ed;
        auto [u, v] = g2.endpoints(e);
        if (u == v) ++loops;
    }
    CHECK(loops == 2);
    CHECK(tr.twist_at_unzip == 0);
    CHECK(tr.u_adjacent == std::array<int, 2>{2, 3});
    CHECK(tr.v_adjacent == std::array<int, 2>{6, 4});
    check_well_formed(g2);
}

TEST_CASE("unzip preconditions") {
    Ktg g = standard_tetrahedron();
    CHECK_THROWS_AS(apply_move(g, Move::unzip(99, 0)), UnknownId);
    // make a loop edge, then try to unzip it
    auto [g2, tr] = apply_move(g, Move::unzip(1, 0));
    (void)tr;
    int loop_edge = -1;
    for (const auto& [e, ed] : g2.edges) {
        (void)ed;
        auto [u, v] = g2.endpoints(e);
        if (u == v) loop_edge = e;
    }
    REQUIRE(loop_edge > 0);
    CHECK_THROWS_AS(apply_move(g2, Move::unzip(loop_edge, 0)), UnzipLoopEdge);
    // two more unzips produce a circle; unzipping it must be rejected
    auto seq = parse_ok("tet\nU e1\nU e5\n");
    auto rep = replay_sequence(seq);
    REQUIRE(rep.graph.circles.size() > 0);
    int cid = rep.graph.circles.begin()->first;
    CHECK_THROWS_AS(apply_move(rep.graph, Move::unzip(cid, 0)), UnzipCircle);
}

TEST_CASE("theta graph construction and circle bookkeeping") {
    // A v1 makes the triangle v5 v6 v7 (edges e7 = v5v6, e8 = v6v7, e9 = v7v5);
    // unzipping e7 then e3 leaves the theta graph on two vertices.
    auto seq = parse_ok("tet\nA v1\nU e7\nU e3\n");
    auto rep = replay_sequence(seq);
    CHECK(rep.graph.vertices.size() == 2);
    CHECK(rep.graph.edges.size() == 3);
    CHECK(rep.graph.circles.empty());
    // all three edges join the same two vertices
    std::set<int> vs;
    for (const auto& [e, ed] : rep.graph.edges) {
        (void)ed;
        auto [u, v] = rep.graph.endpoints(e);
        CHECK(u != v);
        vs.insert(u);
        vs.insert(v);
    }
    CHECK(vs.size() == 2);
    check_well_formed(rep.graph);

    // unzipping a theta edge closes the remaining strands into circles
    int eid = rep.graph.edges.begin()->first;
    auto [g2, tr] = apply_move(rep.graph, Move::unzip(eid, 0));
    (void)tr;
    CHECK(g2.vertices.empty());
    CHECK(g2.edges.empty());
    CHECK(g2.circles.size() + 0 >= 1);
    CHECK(g2.circles.size() <= 2);
}

TEST_CASE("triangle then unzip matches the single triangle move") {
    // the same graph arises from one triangle move on the top vertex, or
    // triangle moves on both lower vertices followed by unzipping the edge
    // between them
    auto seq1 = parse_ok("tet\nA v1\nA v5\n");
    auto seq2 = parse_ok("tet\nA v1\nA v6\nA v7\nU e8\n");
    auto g1 = replay_sequence(seq1).graph;
    auto g2 = replay_sequence(seq2).graph;
    CHECK(isomorphic(g1, g2));
    // negative control: theta and the two-loop graph share all counts but
    // are not isomorphic
    auto theta = replay_sequence(parse_ok("tet\nA v1\nU e7\nU e3\n")).graph;
    auto loops = replay_sequence(parse_ok("tet\nU e1\n")).graph;
    CHECK_FALSE(isomorphic(theta, loops));
}

TEST_CASE("parser basics") {
    auto seq = parse_ok("tet\nA v1\nH+ e2\nU e5 rings=1\n");
    REQUIRE(seq.moves.size() == 3);
    CHECK(seq.moves[0] == Move::triangle(1));
    CHECK(seq.moves[1] == Move::half_twist(2, +1));
    CHECK(seq.moves[2] == Move::unzip(5, 1));

    CHECK_THROWS_AS(parse_ok("tet\nU e99\n"), UnknownId);
    CHECK_THROWS_AS(parse_ok("A v1\n"), ParseError);         // missing header
    CHECK_THROWS_AS(parse_ok("tet\nB v1\n"), ParseError);    // unknown move
    CHECK_THROWS_AS(parse_ok("tet\nA e1\n"), ParseError);    // wrong id kind
    CHECK_THROWS_AS(parse_ok("tet\nU e5 rings=x\n"), ParseError);
    try {
        parse_ok("tet\n# fine\nU e99\n");
        FAIL("expected UnknownId");
    } catch (const UnknownId& e) {
        CHECK(e.line == 3);
    }
    // comments and CRLF
    auto seq2 = parse_ok("tet\r\n# comment line\r\nA v1 # trailing\r\n");
    CHECK(seq2.moves.size() == 1);
}

TEST_CASE("serializer round trip is canonical") {
    auto seq = parse_ok("tet\n  A   v1\nH+    e2\n U e5   rings=2\n");
    std::string canon = serialize(seq);
    CHECK(canon == "tet\nA v1\nH+ e2\nU e5 rings=2\n");
    CHECK(parse_sequence(canon) == seq);
}

TEST_CASE("parser round trip on random sequences") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        MoveSequence seq = random_sequence(rng);
        std::string text = serialize(seq);
        MoveSequence back = parse_sequence(text);
        CHECK(back == seq);
        CHECK(serialize(back) == text);
    }
}

TEST_CASE("invalid-target mutations are rejected with positions") {
    std::mt19937 rng(4242);
    int rejected = 0;
    for (int i = 0; i < 50; ++i) {
        MoveSequence seq = random_sequence(rng, 6);
        if (seq.moves.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, seq.moves.size() - 1);
        MoveSequence bad = seq;
        bad.moves[pick(rng)].target = 9999;
        try {
            replay_sequence(bad);
        } catch (const KtjError&) {
            ++rejected;
        }
    }
    CHECK(rejected > 0);
}

TEST_CASE("replay invariants on random sequences") {
    std::mt19937 rng(777);
    for (int i = 0; i < 100; ++i) {
        MoveSequence seq = random_sequence(rng);
        auto rep = replay_sequence(seq);
        check_well_formed(rep.graph);
    }
}

TEST_CASE("stats and twist reporting") {
    CHECK(stats(MoveSequence{}).t == 0);
    CHECK(stats(MoveSequence{}).u == 0);
    CHECK(stats(MoveSequence{}).theta == 0);
    CHECK(stats(MoveSequence{}).r == 0);

    auto seq = parse_ok("tet\nA v1\nH+ e2\nH+ e2\nU e5 rings=1\n");
    auto st = stats(seq);
    CHECK(st.t == 1);
    CHECK(st.u == 1);
    CHECK(st.theta == 2);
    CHECK(st.r == 1);
    CHECK(st.per_unzip_rings == std::vector<int>{1});
    CHECK(st.twist_at_unzip == std::vector<int>{0});

    auto seq2 = parse_ok("tet\nH+ e5\nU e5\n");
    CHECK(stats(seq2).twist_at_unzip == std::vector<int>{1});
}

TEST_CASE("augment") {
    auto seq = parse_ok("tet\nA v1\nU e7\nU e3\n");
    auto a1 = augment(seq, 1);
    CHECK(stats(a1).r == 2);
    auto a2 = augment(seq, std::vector<int>{2, 3});
    CHECK(stats(a2).r == 5);
    auto st = stats(a2);
    CHECK(st.t == stats(seq).t);
    CHECK(st.theta == stats(seq).theta);
    CHECK_THROWS_AS(augment(seq, 0), DomainError);
    CHECK_THROWS_AS(augment(seq, std::vector<int>{1}), DomainError);
    CHECK_THROWS_AS(augment(seq, std::vector<int>{1, 0}), DomainError);
    // no unzips: identity
    auto plain = parse_ok("tet\nA v1\n");
    CHECK(augment(plain, 5) == plain);
}

TEST_CASE("validate reports instead of throwing") {
    auto good = validate(parse_ok("tet\nA v1\n"));
    CHECK(good.ok);
    CHECK(good.stats.t == 1);
    CHECK(good.vertices == 6);

    MoveSequence bad;
    bad.moves.push_back(Move::unzip(99, 0));
    bad.moves[0].line = 2;
    auto rep = validate(bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == 2);
    CHECK(rep.error.find("e99") != std::string::npos);
}

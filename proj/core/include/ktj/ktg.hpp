#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ktj {

/// Knotted trivalent graph as a fat graph: vertices carry a cyclic triple of
/// darts, edges own two darts and a signed half-twist count. Components that
/// lose all vertices become circles. Ids are never reused within a history.
struct Ktg {
    struct Edge {
        std::array<int, 2> darts;
        int twist = 0;
        bool operator==(const Edge&) const = default;
    };

    std::map<int, std::array<int, 3>> vertices; // vid -> darts in cyclic order
    std::map<int, Edge> edges;                  // eid -> edge
    std::map<int, int> circles;                 // eid -> twist (vertexless component)
    std::map<int, std::pair<int, int>> rings;   // ring id -> encircled strand pair

    std::map<int, int> dart_edge;   // dart -> owning edge
    std::map<int, int> dart_vertex; // dart -> vertex holding it

    int next_vid = 1;
    int next_eid = 1;
    int next_rid = 1;
    int next_dart = 1;

    bool has_vertex(int v) const { return vertices.count(v) != 0; }
    bool has_edge(int e) const { return edges.count(e) != 0; }
    bool has_circle(int e) const { return circles.count(e) != 0; }
    // endpoints (vertex ids) of an edge
    std::pair<int, int> endpoints(int e) const;
};

struct Move {
    enum class Kind { Triangle, HalfTwist, Unzip };
    Kind kind;
    int target = 0;
    int sign = 0;  // HalfTwist: +1 / -1
    int rings = 0; // Unzip: number of augmentation rings
    int line = 0;  // source line when parsed from the DSL

    static Move triangle(int v) { return {Kind::Triangle, v, 0, 0, 0}; }
    static Move half_twist(int e, int s) { return {Kind::HalfTwist, e, s, 0, 0}; }
    static Move unzip(int e, int m = 0) { return {Kind::Unzip, e, 0, m, 0}; }

    bool operator==(const Move& o) const {
        return kind == o.kind && target == o.target && sign == o.sign && rings == o.rings;
    }
};

struct MoveSequence {
    std::vector<Move> moves;
    int declared_split_components = 1;

    bool operator==(const MoveSequence& o) const {
        return moves == o.moves && declared_split_components == o.declared_split_components;
    }
};

/// What one applied move did, in enough detail to reverse it.
struct MoveTrace {
    Move move;

    // Triangle
    int removed_vertex = 0;
    std::array<int, 3> new_vertices{0, 0, 0};
    std::array<int, 3> new_edges{0, 0, 0};   // t1 = nv1nv2, t2 = nv2nv3, t3 = nv3nv1
    std::array<int, 3> outer_edges{0, 0, 0}; // edges at the removed vertex, rotation order

    // Unzip
    struct Weld {
        int merged_id = 0;          // new edge or circle id
        std::array<int, 2> parts{0, 0}; // constituent edge ids (equal when a circle closes)
        bool is_circle = false;
    };
    int endpoint_u = 0, endpoint_v = 0;
    std::array<int, 2> u_adjacent{0, 0}; // edges after the unzipped dart at u (a1, a2)
    std::array<int, 2> v_adjacent{0, 0}; // (b1, b2)
    int twist_at_unzip = 0;
    std::vector<Weld> welds;
    std::array<int, 2> strand_ids{0, 0}; // final ids of the welded strands
    std::vector<int> ring_ids;
};

struct MoveStats {
    int t = 0;     // triangle moves
    int u = 0;     // unzips
    int theta = 0; // half twists counted with sign
    int r = 0;     // total augmentation rings
    std::vector<int> per_unzip_rings;
    std::vector<int> twist_at_unzip;
};

struct Replay {
    Ktg graph;
    std::vector<MoveTrace> traces;
    MoveStats stats;
};

/// The standard tetrahedron: vertices v1..v4, edges e1..e6 with incidence
/// e1=v1v2, e2=v1v3, e3=v1v4, e4=v2v3, e5=v3v4, e6=v2v4 and fixed rotations
/// from a planar embedding (v1 central).
Ktg standard_tetrahedron();

/// Apply one move; throws BadTarget / UnzipLoopEdge / UnzipCircle / UnknownId.
std::pair<Ktg, MoveTrace> apply_move(const Ktg& g, const Move& m);

/// Replay a sequence from the standard tetrahedron; throws on first failure.
Replay replay_sequence(const MoveSequence& seq);

struct ValidationReport {
    bool ok = false;
    std::string error;
    int line = 0;
    MoveStats stats;
    int vertices = 0, edges = 0, circles = 0, ring_components = 0;
};

/// Replay without throwing; the report carries the first failure.
ValidationReport validate(const MoveSequence& seq);

/// Stats only (replays internally to recover twists at unzip time).
MoveStats stats(const MoveSequence& seq);

/// Replace each unzip's ring count. Throws DomainError for counts < 1 or a
/// list whose length differs from the number of unzips.
MoveSequence augment(const MoveSequence& seq, int uniform_rings);
MoveSequence augment(const MoveSequence& seq, const std::vector<int>& rings);

/// Fat-graph isomorphism (cyclic rotations preserved, globally or globally
/// reflected), with matching twists, circle twist multisets and ring counts.
bool isomorphic(const Ktg& a, const Ktg& b);

} // namespace ktj

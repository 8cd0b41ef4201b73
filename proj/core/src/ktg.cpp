#include "ktj/ktg.hpp"

#include <algorithm>
#include <cassert>

#include "ktj/errors.hpp"

namespace ktj {

std::pair<int, int> Ktg::endpoints(int e) const {
    const auto& ed = edges.at(e);
    return {dart_vertex.at(ed.darts[0]), dart_vertex.at(ed.darts[1])};
}

namespace {

int fresh_dart(Ktg& g) { return g.next_dart++; }

void place_dart(Ktg& g, int dart, int edge, int vertex) {
    g.dart_edge[dart] = edge;
    g.dart_vertex[dart] = vertex;
}

int make_edge(Ktg& g, int v_from, int v_to) {
    // caller fills the rotation slots; darts are registered here
    int e = g.next_eid++;
    int d0 = fresh_dart(g), d1 = fresh_dart(g);
    g.edges[e] = {{d0, d1}, 0};
    place_dart(g, d0, e, v_from);
    place_dart(g, d1, e, v_to);
    return e;
}

// rotate the cyclic triple so the given dart comes first
std::array<int, 3> rotation_from(const std::array<int, 3>& rot, int dart) {
    for (int i = 0; i < 3; ++i) {
        if (rot[static_cast<std::size_t>(i)] == dart)
            return {rot[static_cast<std::size_t>(i)], rot[static_cast<std::size_t>((i + 1) % 3)],
                    rot[static_cast<std::size_t>((i + 2) % 3)]};
    }
    throw BadTarget("rotation_from: dart not at vertex");
}

} // namespace

Ktg standard_tetrahedron() {
    Ktg g;
    for (int v = 1; v <= 4; ++v) g.vertices[v] = {0, 0, 0};
    g.next_vid = 5;
    int e1 = make_edge(g, 1, 2);
    int e2 = make_edge(g, 1, 3);
    int e3 = make_edge(g, 1, 4);
    int e4 = make_edge(g, 2, 3);
    int e5 = make_edge(g, 3, 4);
    int e6 = make_edge(g, 2, 4);
    auto d = [&](int e, int end) { return g.edges[e].darts[static_cast<std::size_t>(end)]; };
    g.vertices[1] = {d(e1, 0), d(e2, 0), d(e3, 0)};
    g.vertices[2] = {d(e1, 1), d(e6, 0), d(e4, 0)};
    g.vertices[3] = {d(e2, 1), d(e4, 1), d(e5, 0)};
    g.vertices[4] = {d(e3, 1), d(e5, 1), d(e6, 1)};
    return g;
}

namespace {

MoveTrace apply_triangle(Ktg& g, const Move& m) {
    auto it = g.vertices.find(m.target);
    if (it == g.vertices.end())
        throw UnknownId("triangle move: no vertex v" + std::to_string(m.target), m.line);
    MoveTrace tr;
    tr.move = m;
    tr.removed_vertex = m.target;
    std::array<int, 3> old_darts = it->second;
    g.vertices.erase(it);

    std::array<int, 3> nv;
    for (int i = 0; i < 3; ++i) {
        nv[static_cast<std::size_t>(i)] = g.next_vid++;
        g.vertices[nv[static_cast<std::size_t>(i)]] = {0, 0, 0};
    }
    // triangle edges t1 = nv1nv2, t2 = nv2nv3, t3 = nv3nv1
    std::array<int, 3> te;
    te[0] = make_edge(g, nv[0], nv[1]);
    te[1] = make_edge(g, nv[1], nv[2]);
    te[2] = make_edge(g, nv[2], nv[0]);
    auto dart_of = [&](int e, int end) {
        return g.edges[e].darts[static_cast<std::size_t>(end)];
    };
    // nv_i keeps the i-th external dart; rotation (external, next edge, previous edge)
    g.vertices[nv[0]] = {old_darts[0], dart_of(te[0], 0), dart_of(te[2], 1)};
    g.vertices[nv[1]] = {old_darts[1], dart_of(te[1], 0), dart_of(te[0], 1)};
    g.vertices[nv[2]] = {old_darts[2], dart_of(te[2], 0), dart_of(te[1], 1)};
    for (int i = 0; i < 3; ++i) {
        g.dart_vertex[old_darts[static_cast<std::size_t>(i)]] = nv[static_cast<std::size_t>(i)];
        tr.outer_edges[static_cast<std::size_t>(i)] =
            g.dart_edge.at(old_darts[static_cast<std::size_t>(i)]);
    }
    tr.new_vertices = nv;
    tr.new_edges = te;
    return tr;
}

MoveTrace apply_half_twist(Ktg& g, const Move& m) {
    MoveTrace tr;
    tr.move = m;
    if (auto it = g.edges.find(m.target); it != g.edges.end()) {
        it->second.twist += m.sign;
    } else if (auto ic = g.circles.find(m.target); ic != g.circles.end()) {
        ic->second += m.sign;
    } else {
        throw UnknownId("half twist: no edge e" + std::to_string(m.target), m.line);
    }
    return tr;
}

// Join two free edge ends (darts at dissolved vertices). Returns the weld record.
MoveTrace::Weld weld(Ktg& g, int dart_p, int dart_q) {
    MoveTrace::Weld w;
    int ep = g.dart_edge.at(dart_p);
    int eq = g.dart_edge.at(dart_q);
    w.parts = {ep, eq};
    if (ep == eq) {
        // the edge closes into a circle
        int cid = g.next_eid++;
        w.merged_id = cid;
        w.is_circle = true;
        int twist = g.edges.at(ep).twist;
        for (int d : g.edges.at(ep).darts) {
            g.dart_edge.erase(d);
            g.dart_vertex.erase(d);
        }
        g.edges.erase(ep);
        g.circles[cid] = twist;
        for (auto& [rid, pr] : g.rings) {
            if (pr.first == ep) pr.first = cid;
            if (pr.second == ep) pr.second = cid;
        }
        return w;
    }
    const auto& edge_p = g.edges.at(ep);
    const auto& edge_q = g.edges.at(eq);
    int other_p = edge_p.darts[0] == dart_p ? edge_p.darts[1] : edge_p.darts[0];
    int other_q = edge_q.darts[0] == dart_q ? edge_q.darts[1] : edge_q.darts[0];
    int twist = edge_p.twist + edge_q.twist;
    int merged = g.next_eid++;
    w.merged_id = merged;
    g.edges[merged] = {{other_p, other_q}, twist};
    g.dart_edge[other_p] = merged;
    g.dart_edge[other_q] = merged;
    g.dart_edge.erase(dart_p);
    g.dart_edge.erase(dart_q);
    g.dart_vertex.erase(dart_p);
    g.dart_vertex.erase(dart_q);
    g.edges.erase(ep);
    g.edges.erase(eq);
    for (auto& [rid, pr] : g.rings) {
        if (pr.first == ep || pr.first == eq) pr.first = merged;
        if (pr.second == ep || pr.second == eq) pr.second = merged;
    }
    return w;
}

MoveTrace apply_unzip(Ktg& g, const Move& m) {
    if (g.has_circle(m.target))
        throw UnzipCircle("unzip: e" + std::to_string(m.target) + " is a circle");
    auto it = g.edges.find(m.target);
    if (it == g.edges.end())
        throw UnknownId("unzip: no edge e" + std::to_string(m.target), m.line);
    MoveTrace tr;
    tr.move = m;
    auto [u, v] = g.endpoints(m.target);
    if (u == v) throw UnzipLoopEdge("unzip: e" + std::to_string(m.target) + " is a loop");
    tr.endpoint_u = u;
    tr.endpoint_v = v;
    tr.twist_at_unzip = it->second.twist;

    int du = it->second.darts[0], dv = it->second.darts[1];
    if (g.dart_vertex.at(du) != u) std::swap(du, dv);
    auto rot_u = rotation_from(g.vertices.at(u), du);
    auto rot_v = rotation_from(g.vertices.at(v), dv);
    int a1 = rot_u[1], a2 = rot_u[2];
    int b1 = rot_v[1], b2 = rot_v[2];
    tr.u_adjacent = {g.dart_edge.at(a1), g.dart_edge.at(a2)};
    tr.v_adjacent = {g.dart_edge.at(b1), g.dart_edge.at(b2)};

    // remove the unzipped edge and both endpoint vertices
    for (int d : g.edges.at(m.target).darts) {
        g.dart_edge.erase(d);
        g.dart_vertex.erase(d);
    }
    g.edges.erase(m.target);
    g.vertices.erase(u);
    g.vertices.erase(v);
    for (int d : {a1, a2, b1, b2}) g.dart_vertex.erase(d);

    // strand pairing: a1 joins b2, a2 joins b1
    tr.welds.push_back(weld(g, a1, b2));
    int s1 = tr.welds.back().merged_id;
    // the first weld may have consumed the edge of a2 or b1; look up live ids
    tr.welds.push_back(weld(g, a2, b1));
    int s2 = tr.welds.back().merged_id;
    tr.strand_ids = {s1, s2};

    for (int i = 0; i < m.rings; ++i) {
        int rid = g.next_rid++;
        g.rings[rid] = {s1, s2};
        tr.ring_ids.push_back(rid);
    }
    return tr;
}

} // namespace

std::pair<Ktg, MoveTrace> apply_move(const Ktg& g, const Move& m) {
    Ktg next = g;
    MoveTrace tr;
    switch (m.kind) {
        case Move::Kind::Triangle: tr = apply_triangle(next, m); break;
        case Move::Kind::HalfTwist: tr = apply_half_twist(next, m); break;
        case Move::Kind::Unzip: tr = apply_unzip(next, m); break;
    }
    return {std::move(next), std::move(tr)};
}

Replay replay_sequence(const MoveSequence& seq) {
    Replay r;
    r.graph = standard_tetrahedron();
    for (const auto& m : seq.moves) {
        auto [next, tr] = apply_move(r.graph, m);
        r.graph = std::move(next);
        switch (m.kind) {
            case Move::Kind::Triangle: r.stats.t += 1; break;
            case Move::Kind::HalfTwist: r.stats.theta += m.sign; break;
            case Move::Kind::Unzip:
                r.stats.u += 1;
                r.stats.r += m.rings;
                r.stats.per_unzip_rings.push_back(m.rings);
                r.stats.twist_at_unzip.push_back(tr.twist_at_unzip);
                break;
        }
        r.traces.push_back(std::move(tr));
    }
    return r;
}

ValidationReport validate(const MoveSequence& seq) {
    ValidationReport rep;
    try {
        Replay r = replay_sequence(seq);
        rep.ok = true;
        rep.stats = std::move(r.stats);
        rep.vertices = static_cast<int>(r.graph.vertices.size());
        rep.edges = static_cast<int>(r.graph.edges.size());
        rep.circles = static_cast<int>(r.graph.circles.size());
        rep.ring_components = static_cast<int>(r.graph.rings.size());
    } catch (const UnknownId& e) {
        rep.error = e.what();
        rep.line = e.line;
    } catch (const KtjError& e) {
        rep.error = e.what();
    }
    return rep;
}

MoveStats stats(const MoveSequence& seq) { return replay_sequence(seq).stats; }

MoveSequence augment(const MoveSequence& seq, int uniform_rings) {
    if (uniform_rings < 1) throw DomainError("augment: ring count must be >= 1");
    MoveSequence out = seq;
    for (auto& m : out.moves)
        if (m.kind == Move::Kind::Unzip) m.rings = uniform_rings;
    return out;
}

MoveSequence augment(const MoveSequence& seq, const std::vector<int>& rings) {
    MoveSequence out = seq;
    std::size_t i = 0;
    for (auto& m : out.moves) {
        if (m.kind != Move::Kind::Unzip) continue;
        if (i >= rings.size()) throw DomainError("augment: ring list too short");
        if (rings[i] < 1) throw DomainError("augment: ring count must be >= 1");
        m.rings = rings[i++];
    }
    if (i != rings.size()) throw DomainError("augment: ring list too long");
    return out;
}

namespace {

struct IsoState {
    const Ktg* g1;
    const Ktg* g2;
    bool reflect = false;
    std::map<int, int> vmap; // g1 vertex -> g2 vertex
    std::map<int, int> dmap; // g1 dart -> g2 dart
    std::map<int, int> used; // g2 vertex -> g1 vertex
};

// orient the rotation of a vertex starting at a dart, honouring reflection
std::array<int, 3> oriented_rotation(const std::array<int, 3>& rot, int first, bool reflect) {
    std::array<int, 3> r{};
    int idx = -1;
    for (int i = 0; i < 3; ++i)
        if (rot[static_cast<std::size_t>(i)] == first) idx = i;
    assert(idx >= 0);
    for (int i = 0; i < 3; ++i) {
        int j = reflect ? (idx - i + 6) % 3 : (idx + i) % 3;
        r[static_cast<std::size_t>(i)] = rot[static_cast<std::size_t>(j)];
    }
    return r;
}

// propagate a seed dart correspondence across a connected component
bool propagate(IsoState& st, int d1, int d2) {
    std::vector<std::pair<int, int>> stack{{d1, d2}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        auto it = st.dmap.find(a);
        if (it != st.dmap.end()) {
            if (it->second != b) return false;
            continue;
        }
        // edges must correspond, including twists
        int ea = st.g1->dart_edge.at(a);
        int eb = st.g2->dart_edge.at(b);
        if (st.g1->edges.at(ea).twist != st.g2->edges.at(eb).twist) return false;
        // map both darts of the edge
        const auto& da = st.g1->edges.at(ea).darts;
        const auto& db = st.g2->edges.at(eb).darts;
        int other_a = da[0] == a ? da[1] : da[0];
        int other_b = db[0] == b ? db[1] : db[0];
        st.dmap[a] = b;
        st.dmap[other_a] = other_b;
        // vertices at each mapped dart must correspond with matching rotations
        for (auto [x, y] : {std::pair<int, int>{a, b}, {other_a, other_b}}) {
            int vx = st.g1->dart_vertex.at(x);
            int vy = st.g2->dart_vertex.at(y);
            auto vit = st.vmap.find(vx);
            if (vit != st.vmap.end()) {
                if (vit->second != vy) return false;
            } else {
                if (st.used.count(vy)) return false;
                st.vmap[vx] = vy;
                st.used[vy] = vx;
            }
            auto r1 = oriented_rotation(st.g1->vertices.at(vx), x, false);
            auto r2 = oriented_rotation(st.g2->vertices.at(vy), y, st.reflect);
            for (int i = 1; i < 3; ++i)
                stack.push_back({r1[static_cast<std::size_t>(i)], r2[static_cast<std::size_t>(i)]});
        }
    }
    return true;
}

std::vector<std::vector<int>> vertex_components(const Ktg& g) {
    std::vector<std::vector<int>> comps;
    std::map<int, bool> seen;
    for (const auto& [v, rot] : g.vertices) {
        if (seen[v]) continue;
        std::vector<int> comp, stack{v};
        seen[v] = true;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (int d : g.vertices.at(x)) {
                int e = g.dart_edge.at(d);
                const auto& darts = g.edges.at(e).darts;
                for (int dd : darts) {
                    int w = g.dart_vertex.count(dd) ? g.dart_vertex.at(dd) : -1;
                    if (w >= 0 && !seen[w]) {
                        seen[w] = true;
                        stack.push_back(w);
                    }
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool match_components(const IsoState& base, const std::vector<std::vector<int>>& comps,
                      std::size_t idx, const IsoState& acc) {
    if (idx == comps.size()) return true;
    int anchor = comps[idx][0];
    const Ktg& g2 = *base.g2;
    for (const auto& [w, rot2] : g2.vertices) {
        if (acc.used.count(w)) continue;
        for (int slot = 0; slot < 3; ++slot) {
            IsoState st = acc;
            int d1 = st.g1->vertices.at(anchor)[0];
            int d2 = rot2[static_cast<std::size_t>(slot)];
            if (!propagate(st, d1, d2)) continue;
            if (match_components(base, comps, idx + 1, st)) return true;
        }
    }
    return false;
}

} // namespace

bool isomorphic(const Ktg& a, const Ktg& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    if (a.rings.size() != b.rings.size()) return false;
    std::vector<int> ca, cb;
    for (auto& [id, t] : a.circles) { (void)id; ca.push_back(t); }
    for (auto& [id, t] : b.circles) { (void)id; cb.push_back(t); }
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return false;
    if (a.vertices.empty()) return true;

    auto comps = vertex_components(a);
    for (bool reflect : {false, true}) {
        IsoState st;
        st.g1 = &a;
        st.g2 = &b;
        st.reflect = reflect;
        if (match_components(st, comps, 0, st)) return true;
    }
    return false;
}

} // namespace ktj

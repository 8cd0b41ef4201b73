#include "ktj/octgeom.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "ktj/errors.hpp"
#include "ktj/qsymbols.hpp"

namespace ktj {

namespace {

int sgn_index(int s) { return s > 0 ? 0 : 1; }

} // namespace

int OctTemplate::hex(int sx, int sy, int sz) const {
    return 4 * sgn_index(sx) + 2 * sgn_index(sy) + sgn_index(sz);
}

int OctTemplate::square(int axis, int sign) const { return 8 + 2 * axis + sgn_index(sign); }

std::pair<int, int> OctTemplate::neighbor(int f, int j) const {
    const auto& verts = faces[static_cast<std::size_t>(f)].verts;
    int a = verts[static_cast<std::size_t>(j)];
    int b = verts[static_cast<std::size_t>((j + 1) % verts.size())];
    auto it = edge_neighbor_.find({f * 100 + j, 0});
    (void)a;
    (void)b;
    return {it->second.first, it->second.second};
}

std::vector<int> OctTemplate::red_slots(int f) const {
    std::vector<int> out;
    for (int j = 0; j < face_size(f); ++j) {
        auto [nf, nj] = neighbor(f, j);
        (void)nj;
        if (color(nf) == Color::Red) out.push_back(j);
    }
    return out;
}

int OctTemplate::square_at(int f, int j) const {
    auto [nf, nj] = neighbor(f, j);
    (void)nj;
    assert(color(nf) == Color::Red);
    return nf;
}

const OctTemplate& OctTemplate::get() {
    static OctTemplate t = [] {
        OctTemplate tpl;
        // vertices: permutations of (0, +-1, +-2)
        for (int axis0 = 0; axis0 < 3; ++axis0) { // which coordinate is 0
            for (int s1 : {1, -1}) {
                for (int s2 : {2, -2}) {
                    // two arrangements of (s1, s2) over the non-zero axes
                    std::array<int, 3> v{0, 0, 0};
                    int a1 = (axis0 + 1) % 3, a2 = (axis0 + 2) % 3;
                    v[static_cast<std::size_t>(a1)] = s1;
                    v[static_cast<std::size_t>(a2)] = s2;
                    tpl.coords.push_back(v);
                    v = {0, 0, 0};
                    v[static_cast<std::size_t>(a1)] = s2;
                    v[static_cast<std::size_t>(a2)] = s1;
                    tpl.coords.push_back(v);
                }
            }
        }
        // deduplicate (each arrangement generated once; keep order stable)
        std::sort(tpl.coords.begin(), tpl.coords.end());
        tpl.coords.erase(std::unique(tpl.coords.begin(), tpl.coords.end()), tpl.coords.end());
        assert(tpl.coords.size() == 24);

        auto order_cycle = [&](std::vector<int> vs, std::array<double, 3> n) {
            // sort the corners counterclockwise around the outward normal
            std::array<double, 3> c{0, 0, 0};
            for (int v : vs)
                for (int k = 0; k < 3; ++k)
                    c[static_cast<std::size_t>(k)] +=
                        tpl.coords[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)] /
                        static_cast<double>(vs.size());
            // basis in the face plane
            std::array<double, 3> u{0, 0, 0};
            {
                std::array<double, 3> ref{1, 0, 0};
                if (std::abs(n[0]) > 0.9) ref = {0, 1, 0};
                // u = n x ref
                u = {n[1] * ref[2] - n[2] * ref[1], n[2] * ref[0] - n[0] * ref[2],
                     n[0] * ref[1] - n[1] * ref[0]};
            }
            std::array<double, 3> w{n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2],
                                    n[0] * u[1] - n[1] * u[0]};
            auto angle = [&](int v) {
                double x = 0, y = 0;
                for (int k = 0; k < 3; ++k) {
                    double d = tpl.coords[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)] -
                               c[static_cast<std::size_t>(k)];
                    x += d * u[static_cast<std::size_t>(k)];
                    y += d * w[static_cast<std::size_t>(k)];
                }
                return std::atan2(y, x);
            };
            std::sort(vs.begin(), vs.end(), [&](int p, int q) { return angle(p) < angle(q); });
            return vs;
        };

        // hexagons: sx x + sy y + sz z = 3, blue when the sign product is +
        for (int sx : {1, -1})
            for (int sy : {1, -1})
                for (int sz : {1, -1}) {
                    std::vector<int> vs;
                    for (int i = 0; i < 24; ++i) {
                        const auto& v = tpl.coords[static_cast<std::size_t>(i)];
                        if (sx * v[0] + sy * v[1] + sz * v[2] == 3) vs.push_back(i);
                    }
                    assert(vs.size() == 6);
                    Face f;
                    f.color = (sx * sy * sz > 0) ? Color::Blue : Color::White;
                    double len = std::sqrt(3.0);
                    f.verts = order_cycle(vs, {sx / len, sy / len, sz / len});
                    tpl.faces.push_back(std::move(f));
                }
        // squares: coordinate = +-2
        for (int axis = 0; axis < 3; ++axis)
            for (int sign : {1, -1}) {
                std::vector<int> vs;
                for (int i = 0; i < 24; ++i)
                    if (tpl.coords[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)] ==
                        2 * sign)
                        vs.push_back(i);
                assert(vs.size() == 4);
                Face f;
                f.color = Color::Red;
                std::array<double, 3> n{0, 0, 0};
                n[static_cast<std::size_t>(axis)] = sign;
                f.verts = order_cycle(vs, n);
                tpl.faces.push_back(std::move(f));
            }

        // face adjacency through shared edges
        std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> by_edge;
        for (int f = 0; f < static_cast<int>(tpl.faces.size()); ++f) {
            const auto& vs = tpl.faces[static_cast<std::size_t>(f)].verts;
            for (int j = 0; j < static_cast<int>(vs.size()); ++j) {
                int a = vs[static_cast<std::size_t>(j)];
                int b = vs[static_cast<std::size_t>((j + 1) % vs.size())];
                by_edge[{std::min(a, b), std::max(a, b)}].push_back({f, j});
            }
        }
        for (const auto& [e, slots] : by_edge) {
            (void)e;
            assert(slots.size() == 2);
            tpl.edge_neighbor_[{slots[0].first * 100 + slots[0].second, 0}] = slots[1];
            tpl.edge_neighbor_[{slots[1].first * 100 + slots[1].second, 0}] = slots[0];
        }
        return tpl;
    }();
    return t;
}

void OctGluing::pair(FaceRef a, FaceRef b, CornerMap m) {
    if (pairings.count(a) || pairings.count(b))
        throw GluingConflict("face pairing requested twice");
    pairings[a] = {b, m};
    pairings[b] = {a, m.inverse()};
}

namespace {

const int kBlueSigns[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};

// dihedral corner map solving three edge-slot constraints; throws when the
// constraints are cyclically incompatible
CornerMap solve_map(const std::vector<std::pair<int, int>>& slot_pairs) {
    for (int dir : {1, -1}) {
        for (int off = 0; off < 6; ++off) {
            CornerMap m{off, dir};
            bool ok = true;
            for (auto [ja, jb] : slot_pairs)
                if (m.edge(ja) != jb) ok = false;
            if (ok) return m;
        }
    }
    throw GluingConflict("no dihedral correspondence satisfies the tube constraints");
}

struct Builder {
    const OctTemplate& tpl = OctTemplate::get();
    OctGluing g;

    int new_oct() { return g.oct_count++; }

    // mirror-pair two octs along all four white faces, pointwise identity
    void mirror_whites(int upper, int lower) {
        for (int f = 0; f < 8; ++f) {
            if (tpl.color(f) != OctTemplate::Color::White) continue;
            g.pair({upper, f}, {lower, f}, CornerMap{0, 1});
        }
    }

    void label_square(int oct, int face, int edge) {
        g.square_label[{oct, face}] = edge;
    }

    void base(const Ktg& tet) {
        int up = new_oct(), dn = new_oct();
        mirror_whites(up, dn);
        // graph vertex v(i+1) <-> blue sign triple kBlueSigns[i]
        for (int i = 0; i < 4; ++i) {
            int hexf = tpl.hex(kBlueSigns[i][0], kBlueSigns[i][1], kBlueSigns[i][2]);
            OctGluing::Sphere s;
            s.ktg_vertex = i + 1;
            s.fa = {up, hexf};
            s.fb = {dn, hexf};
            for (int slot : tpl.red_slots(hexf)) {
                int sq = tpl.square_at(hexf, slot);
                // the square's two blue hexagons give the edge's endpoints
                int va = -1, vb = -1;
                for (int k = 0; k < 4; ++k) {
                    int hf = tpl.hex(kBlueSigns[k][0], kBlueSigns[k][1], kBlueSigns[k][2]);
                    for (int rs : tpl.red_slots(hf))
                        if (tpl.square_at(hf, rs) == sq) (va < 0 ? va : vb) = k + 1;
                }
                int edge = -1;
                for (const auto& [e, ed] : tet.edges) {
                    (void)ed;
                    auto [x, y] = tet.endpoints(e);
                    if ((x == va && y == vb) || (x == vb && y == va)) edge = e;
                }
                assert(edge > 0);
                s.hole_edge[slot] = edge;
            }
            g.spheres[s.ktg_vertex] = s;
        }
        for (int axis = 0; axis < 3; ++axis)
            for (int sign : {1, -1}) {
                int sq = tpl.square(axis, sign);
                // label both copies with the graph edge of that square
                int hex_owner = -1, slot_owner = -1;
                for (int i = 0; i < 4 && hex_owner < 0; ++i) {
                    int hf = tpl.hex(kBlueSigns[i][0], kBlueSigns[i][1], kBlueSigns[i][2]);
                    for (int rs : tpl.red_slots(hf))
                        if (tpl.square_at(hf, rs) == sq) {
                            hex_owner = i + 1;
                            slot_owner = rs;
                        }
                }
                int edge = g.spheres[hex_owner].hole_edge[slot_owner];
                label_square(0, sq, edge);
                label_square(1, sq, edge);
            }
    }

    // hexagon (other than `base_hex`) adjacent to a given square
    int hex_with_square(int sq, int base_hex) const {
        for (int i = 0; i < 4; ++i) {
            int hf = tpl.hex(kBlueSigns[i][0], kBlueSigns[i][1], kBlueSigns[i][2]);
            if (hf == base_hex) continue;
            for (int rs : tpl.red_slots(hf))
                if (tpl.square_at(hf, rs) == sq) return hf;
        }
        throw GluingConflict("square without a second blue hexagon");
    }

    void triangle(const MoveTrace& tr) {
        auto it = g.spheres.find(tr.removed_vertex);
        if (it == g.spheres.end()) throw GluingConflict("triangle move at vertex without sphere");
        OctGluing::Sphere old = it->second;
        g.spheres.erase(it);

        int up = new_oct(), dn = new_oct();
        mirror_whites(up, dn);

        int glue_hex = tpl.hex(1, 1, 1);
        auto glue_slots = tpl.red_slots(glue_hex); // three red slots of (+++)
        // hole slots of the old face in the rotation order E1, E2, E3
        std::array<int, 3> outer = tr.outer_edges;
        std::vector<int> old_slots;
        for (int slot : tpl.red_slots(old.fa.face)) old_slots.push_back(slot);
        auto slot_of = [&](int edge) {
            for (auto [slot, e] : old.hole_edge)
                if (e == edge) return slot;
            throw GluingConflict("triangle: missing hole for an outer edge");
        };
        // orientation-reversing gluing, pinned by E1 entering the first square
        CornerMap m = solve_map({{slot_of(outer[0]), glue_slots[0]},
                                 {slot_of(outer[1]), glue_slots[2]},
                                 {slot_of(outer[2]), glue_slots[1]}});
        g.pair(old.fa, {up, glue_hex}, m);
        g.pair(old.fb, {dn, glue_hex}, m);

        // squares of the glue hexagon continue the outer tubes
        std::array<int, 3> outer_sq{};
        for (int i = 0; i < 3; ++i) {
            int kslot = m.edge(slot_of(outer[static_cast<std::size_t>(i)]));
            outer_sq[static_cast<std::size_t>(i)] = tpl.square_at(glue_hex, kslot);
            label_square(up, outer_sq[static_cast<std::size_t>(i)], outer[static_cast<std::size_t>(i)]);
            label_square(dn, outer_sq[static_cast<std::size_t>(i)], outer[static_cast<std::size_t>(i)]);
        }
        // new vertex spheres: nv_i at the hexagon beyond E_i's square;
        // triangle edges t1 = nv1nv2, t2 = nv2nv3, t3 = nv3nv1
        std::array<int, 3> nv_hex{};
        for (int i = 0; i < 3; ++i)
            nv_hex[static_cast<std::size_t>(i)] =
                hex_with_square(outer_sq[static_cast<std::size_t>(i)], glue_hex);
        auto common_square = [&](int ha, int hb) {
            for (int ra : tpl.red_slots(ha)) {
                int sq = tpl.square_at(ha, ra);
                for (int rb : tpl.red_slots(hb))
                    if (tpl.square_at(hb, rb) == sq) return sq;
            }
            throw GluingConflict("triangle: new hexagons share no square");
        };
        std::array<int, 3> tri_sq = {common_square(nv_hex[0], nv_hex[1]),
                                     common_square(nv_hex[1], nv_hex[2]),
                                     common_square(nv_hex[2], nv_hex[0])};
        for (int i = 0; i < 3; ++i) {
            label_square(up, tri_sq[static_cast<std::size_t>(i)], tr.new_edges[static_cast<std::size_t>(i)]);
            label_square(dn, tri_sq[static_cast<std::size_t>(i)], tr.new_edges[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < 3; ++i) {
            OctGluing::Sphere s;
            s.ktg_vertex = tr.new_vertices[static_cast<std::size_t>(i)];
            s.fa = {up, nv_hex[static_cast<std::size_t>(i)]};
            s.fb = {dn, nv_hex[static_cast<std::size_t>(i)]};
            for (int slot : tpl.red_slots(nv_hex[static_cast<std::size_t>(i)])) {
                int sq = tpl.square_at(nv_hex[static_cast<std::size_t>(i)], slot);
                int label = -1;
                if (sq == outer_sq[static_cast<std::size_t>(i)])
                    label = tr.outer_edges[static_cast<std::size_t>(i)];
                for (int k = 0; k < 3; ++k)
                    if (sq == tri_sq[static_cast<std::size_t>(k)])
                        label = tr.new_edges[static_cast<std::size_t>(k)];
                if (label < 0) throw GluingConflict("triangle: unexpected square adjacency");
                s.hole_edge[slot] = label;
            }
            g.spheres[s.ktg_vertex] = s;
        }
    }

    void rename_edge(int from, int to) {
        for (auto& [v, s] : g.spheres) {
            (void)v;
            for (auto& [slot, e] : s.hole_edge)
                if (e == from) e = to;
        }
        for (auto& [fr, e] : g.square_label) {
            (void)fr;
            if (e == from) e = to;
        }
    }

    void unzip(const MoveTrace& tr) {
        auto iu = g.spheres.find(tr.endpoint_u);
        auto iv = g.spheres.find(tr.endpoint_v);
        if (iu == g.spheres.end() || iv == g.spheres.end())
            throw GluingConflict("unzip endpoints lack spheres");
        OctGluing::Sphere su = iu->second, sv = iv->second;
        g.spheres.erase(tr.endpoint_u);
        g.spheres.erase(tr.endpoint_v);

        int e = tr.move.target;
        int P = tr.u_adjacent[0], Q = tr.u_adjacent[1];
        int R = tr.v_adjacent[0], S = tr.v_adjacent[1];
        auto slot_of = [&](const OctGluing::Sphere& s, int edge) {
            for (auto [slot, id] : s.hole_edge)
                if (id == edge) return slot;
            throw GluingConflict("unzip: sphere lacks the required hole");
        };
        bool odd = (tr.twist_at_unzip % 2 + 2) % 2 == 1;
        // strands join P with S and Q with R; odd net twist swaps the sides
        // of one sphere (the diagonal identification)
        auto glue_pair = [&](const OctGluing::Sphere& x, const OctGluing::Sphere& y, int yP,
                             int yQ) {
            CornerMap m = solve_map({{slot_of(x, e), slot_of(y, e)},
                                     {slot_of(x, P), slot_of(y, yP)},
                                     {slot_of(x, Q), slot_of(y, yQ)}});
            return m;
        };
        if (!odd) {
            CornerMap m = glue_pair(su, sv, S, R);
            g.pair(su.fa, sv.fa, m);
            g.pair(su.fb, sv.fb, m);
        } else {
            // the half-twist regluing swaps both the faces and the punctures
            CornerMap m = glue_pair(su, sv, R, S);
            g.pair(su.fa, sv.fb, m);
            g.pair(su.fb, sv.fa, m);
        }

        // tube bookkeeping: the welded strands take the merged edge ids, and
        // the tube of e closes into the cusp torus of the augmentation ring
        for (const auto& w : tr.welds) {
            rename_edge(w.parts[0], w.merged_id);
            rename_edge(w.parts[1], w.merged_id);
        }
        int ring_label = tr.ring_ids.empty() ? -(10000 + e) : -tr.ring_ids.front();
        rename_edge(e, ring_label);
    }

    OctGluing run(const MoveSequence& seq) {
        Replay rep = replay_sequence(seq);
        g.stats = rep.stats;
        base(standard_tetrahedron());
        for (const auto& tr : rep.traces) {
            switch (tr.move.kind) {
                case Move::Kind::Triangle: triangle(tr); break;
                case Move::Kind::HalfTwist: break; // geometry unchanged
                case Move::Kind::Unzip: unzip(tr); break;
            }
        }
        return std::move(g);
    }
};

} // namespace

OctGluing build_gluing(const MoveSequence& seq) {
    Builder b;
    return b.run(seq);
}

JSJReport volume(const MoveSequence& seq) {
    MoveStats st = stats(seq);
    for (int m : st.per_unzip_rings)
        if (m < 1) throw NotAugmented("volume: sequence is not augmented");
    JSJReport rep;
    rep.octahedra = 2 * st.t + 2;
    for (int m : st.per_unzip_rings)
        if (m >= 2) rep.seifert_pieces.push_back(m);
    rep.hyperbolic_piece_volume = rep.octahedra * vol_oct();
    rep.total_volume = rep.hyperbolic_piece_volume;
    return rep;
}

std::vector<AsymRow> asymptotic_series(const std::vector<int>& Ns) {
    std::vector<AsymRow> rows;
    const double target = 2.0 * vol_oct();
    for (int N : Ns) {
        if (N < 1 || N % 2 == 0) throw DomainError("asymptotic_series: odd N required");
        AsymRow r;
        r.N = N;
        r.lhs = 2.0 * 3.14159265358979323846 / N * log_sixj(N);
        r.target = target;
        r.error = target - r.lhs;
        rows.push_back(r);
    }
    return rows;
}

} // namespace ktj

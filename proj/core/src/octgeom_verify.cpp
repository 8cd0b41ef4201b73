#include <algorithm>
#include <functional>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ktj/errors.hpp"
#include "ktj/octgeom.hpp"

namespace ktj {

namespace {

using Color = OctTemplate::Color;

// one geometric edge of one octahedron, as its two face slots
struct EdgeKey {
    int oct;
    int va, vb; // template vertex ids, va < vb
    auto operator<=>(const EdgeKey&) const = default;
};

struct Slot {
    FaceRef f;
    int pos;
    auto operator<=>(const Slot&) const = default;
};

EdgeKey edge_of(const OctTemplate& tpl, const Slot& s) {
    const auto& verts = tpl.faces[static_cast<std::size_t>(s.f.face)].verts;
    int a = verts[static_cast<std::size_t>(s.pos)];
    int b = verts[static_cast<std::size_t>((s.pos + 1) % verts.size())];
    return {s.f.oct, std::min(a, b), std::max(a, b)};
}

// the other face slot along the same geometric edge
Slot other_side(const OctTemplate& tpl, const Slot& s) {
    auto [nf, nj] = tpl.neighbor(s.f.face, s.pos);
    return {{s.f.oct, nf}, nj};
}

// the partner slot across a pairing (the glued copy of this edge)
Slot across(const OctGluing& g, const Slot& s) {
    const auto& [pf, m] = g.pairings.at(s.f);
    return {pf, m.edge(s.pos)};
}

struct UnionFind {
    std::map<EdgeKey, EdgeKey> parent;
    EdgeKey find(EdgeKey k) {
        auto it = parent.find(k);
        if (it == parent.end() || it->second == k) {
            parent[k] = k;
            return k;
        }
        EdgeKey r = find(it->second);
        parent[k] = r;
        return r;
    }
    void unite(EdgeKey a, EdgeKey b) { parent[find(a)] = find(b); }
};

// A boundary stitch: two unglued face slots whose edges are identified in the
// boundary surface, with the corner correspondence along the gluing path.
struct Stitch {
    Slot a, b;
    // corner (template vertex) of a's edge -> corner of b's edge
    std::map<int, int> corner_map;
};

// Follow a glued edge from one unglued side to the other, composing corner
// correspondences, starting from slot `s` whose face is unglued.
Stitch chase(const OctTemplate& tpl, const OctGluing& g, Slot s) {
    Stitch st;
    st.a = s;
    const auto& averts = tpl.faces[static_cast<std::size_t>(s.f.face)].verts;
    int ca = averts[static_cast<std::size_t>(s.pos)];
    int cb = averts[static_cast<std::size_t>((s.pos + 1) % averts.size())];
    std::map<int, int> corr{{ca, ca}, {cb, cb}}; // original corner -> current
    Slot cur = other_side(tpl, s);
    int guard = 0;
    while (g.paired(cur.f)) {
        if (++guard > 10000) throw GluingConflict("edge chase does not terminate");
        const auto& [pf, m] = g.pairings.at(cur.f);
        (void)pf;
        // map corners through the pairing
        const auto& cverts = tpl.faces[static_cast<std::size_t>(cur.f.face)].verts;
        Slot nxt = across(g, cur);
        const auto& nverts = tpl.faces[static_cast<std::size_t>(nxt.f.face)].verts;
        std::map<int, int> step;
        int L = static_cast<int>(cverts.size());
        for (int j = 0; j < L; ++j)
            step[cverts[static_cast<std::size_t>(j)]] =
                nverts[static_cast<std::size_t>(m.corner(j))];
        for (auto& [orig, c] : corr) {
            (void)orig;
            c = step.at(c);
        }
        cur = other_side(tpl, nxt);
    }
    st.b = cur;
    const auto& bverts = tpl.faces[static_cast<std::size_t>(cur.f.face)].verts;
    int ba = bverts[static_cast<std::size_t>(cur.pos)];
    int bb = bverts[static_cast<std::size_t>((cur.pos + 1) % bverts.size())];
    st.corner_map[ca] = corr[ca];
    st.corner_map[cb] = corr[cb];
    if (!((corr[ca] == ba && corr[cb] == bb) || (corr[ca] == bb && corr[cb] == ba)))
        throw GluingConflict("edge chase landed on inconsistent corners");
    return st;
}

// connected components of unglued faces of one color, stitched along chases
struct SurfaceComponent {
    std::vector<FaceRef> faces;
    std::vector<Stitch> stitches;       // both ends inside the component
    std::vector<Slot> boundary_slots;   // edges whose far side is the other color
    int boundary_circles = 0;
    int euler = 0;
};

std::vector<SurfaceComponent> surface_components(const OctTemplate& tpl, const OctGluing& g,
                                                 Color color) {
    // collect unglued faces of the color
    std::set<FaceRef> todo;
    for (int oct = 0; oct < g.oct_count; ++oct)
        for (int f = 0; f < 14; ++f)
            if (tpl.color(f) == color && !g.paired({oct, f})) todo.insert({oct, f});

    std::vector<SurfaceComponent> comps;
    while (!todo.empty()) {
        SurfaceComponent comp;
        std::vector<FaceRef> stack{*todo.begin()};
        todo.erase(todo.begin());
        std::set<FaceRef> in_comp{stack[0]};
        std::set<std::pair<Slot, Slot>> seen_stitch;
        while (!stack.empty()) {
            FaceRef f = stack.back();
            stack.pop_back();
            comp.faces.push_back(f);
            int L = tpl.face_size(f.face);
            for (int j = 0; j < L; ++j) {
                Stitch st = chase(tpl, g, {f, j});
                if (tpl.color(st.b.f.face) != color) {
                    comp.boundary_slots.push_back(st.a);
                    continue;
                }
                // stitched to a same-color face
                auto key = std::minmax(st.a, st.b);
                if (seen_stitch.count({key.first, key.second})) continue;
                seen_stitch.insert({key.first, key.second});
                comp.stitches.push_back(st);
                if (!in_comp.count(st.b.f)) {
                    in_comp.insert(st.b.f);
                    todo.erase(st.b.f);
                    stack.push_back(st.b.f);
                }
            }
        }
        // Euler characteristic: corners modulo stitch identifications
        std::map<std::pair<FaceRef, int>, int> corner_id;
        int next = 0;
        auto cid = [&](FaceRef f, int v) {
            auto it = corner_id.find({f, v});
            if (it == corner_id.end()) it = corner_id.emplace(std::make_pair(f, v), next++).first;
            return it->second;
        };
        std::map<int, int> uf;
        std::function<int(int)> find = [&](int x) {
            while (uf.count(x) && uf[x] != x) x = uf[x] = uf[uf[x]];
            if (!uf.count(x)) uf[x] = x;
            return x;
        };
        for (const auto& f : comp.faces)
            for (int v : tpl.faces[static_cast<std::size_t>(f.face)].verts) cid(f, v);
        for (const auto& st : comp.stitches)
            for (auto [va, vb] : st.corner_map) {
                int a = find(cid(st.a.f, va));
                int b = find(cid(st.b.f, vb));
                uf[a] = b;
            }
        std::set<int> vclasses;
        for (auto& [k, id] : corner_id) {
            (void)k;
            vclasses.insert(find(id));
        }
        int E = static_cast<int>(comp.stitches.size()) +
                static_cast<int>(comp.boundary_slots.size());
        int F = static_cast<int>(comp.faces.size());
        comp.euler = static_cast<int>(vclasses.size()) - E + F;

        // boundary circles: walk boundary slots, jumping through stitches at
        // shared corner classes
        std::map<int, std::vector<Slot>> slots_at_class;
        for (const Slot& s : comp.boundary_slots) {
            const auto& verts = tpl.faces[static_cast<std::size_t>(s.f.face)].verts;
            int a = verts[static_cast<std::size_t>(s.pos)];
            int b = verts[static_cast<std::size_t>((s.pos + 1) % verts.size())];
            slots_at_class[find(cid(s.f, a))].push_back(s);
            slots_at_class[find(cid(s.f, b))].push_back(s);
        }
        std::set<Slot> unvisited(comp.boundary_slots.begin(), comp.boundary_slots.end());
        while (!unvisited.empty()) {
            ++comp.boundary_circles;
            Slot start = *unvisited.begin();
            Slot cur = start;
            const auto& sverts = tpl.faces[static_cast<std::size_t>(cur.f.face)].verts;
            int corner = find(cid(cur.f, sverts[static_cast<std::size_t>(cur.pos)]));
            int guard = 0;
            do {
                if (++guard > 100000) throw GluingConflict("boundary walk does not terminate");
                unvisited.erase(cur);
                // move to this edge's other corner, then to the next boundary
                // edge at that corner class
                const auto& verts = tpl.faces[static_cast<std::size_t>(cur.f.face)].verts;
                int a = find(cid(cur.f, verts[static_cast<std::size_t>(cur.pos)]));
                int b = find(cid(
                    cur.f, verts[static_cast<std::size_t>((cur.pos + 1) % verts.size())]));
                int nextc = (corner == a) ? b : a;
                Slot nxt = cur;
                bool found = false;
                for (const Slot& cand : slots_at_class[nextc]) {
                    if (cand == cur) continue;
                    nxt = cand;
                    found = true;
                    break;
                }
                if (!found) throw GluingConflict("boundary circle is not closed");
                corner = nextc;
                cur = nxt;
            } while (cur != start);
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace

GluingReport verify_gluing(const OctGluing& g) {
    const OctTemplate& tpl = OctTemplate::get();
    GluingReport rep;
    rep.octs = g.oct_count;
    auto complain = [&](const std::string& msg) { rep.violations.push_back(msg); };

    if (g.oct_count != 2 * g.stats.t + 2)
        complain("octahedron count " + std::to_string(g.oct_count) + " differs from 2t+2 = " +
                 std::to_string(2 * g.stats.t + 2));

    // pairing sanity: involutive, hexagon-to-hexagon, same colors, no reds
    for (const auto& [a, pb] : g.pairings) {
        const auto& [b, m] = pb;
        auto it = g.pairings.find(b);
        if (it == g.pairings.end() || it->second.first != a) {
            complain("pairing is not involutive");
            continue;
        }
        for (int j = 0; j < 6; ++j) {
            if (it->second.second.edge(m.edge(j)) != j) {
                complain("pairing corner maps are not mutually inverse");
                break;
            }
        }
        if (tpl.color(a.face) == Color::Red || tpl.color(b.face) == Color::Red)
            complain("red face in a pairing");
        else if (tpl.color(a.face) != tpl.color(b.face))
            complain("pairing joins faces of different colors");
        if (tpl.color(a.face) == Color::White && a < b) ++rep.white_pairings;
    }
    for (int oct = 0; oct < g.oct_count; ++oct)
        for (int f = 0; f < 14; ++f)
            if (tpl.color(f) == Color::White && !g.paired({oct, f}))
                complain("unpaired white face on octahedron " + std::to_string(oct));

    if (!rep.violations.empty()) {
        rep.ok = false;
        return rep;
    }

    // edge classes: each class must be a closed cycle of exactly four edges
    // (interior, total angle 2 pi) or a path of one or two (geodesic boundary)
    UnionFind uf;
    std::set<EdgeKey> all_edges;
    for (int oct = 0; oct < g.oct_count; ++oct)
        for (int f = 0; f < 14; ++f)
            for (int j = 0; j < tpl.face_size(f); ++j) {
                Slot s{{oct, f}, j};
                EdgeKey k = edge_of(tpl, s);
                all_edges.insert(k);
                uf.find(k);
                if (g.paired(s.f)) uf.unite(k, edge_of(tpl, across(g, s)));
            }
    std::map<EdgeKey, std::vector<EdgeKey>> classes;
    for (const auto& k : all_edges) classes[uf.find(k)].push_back(k);
    for (const auto& [root, members] : classes) {
        (void)root;
        int glued_slots = 0;
        for (const auto& k : members) {
            // the two face slots of this edge
            for (int f = 0; f < 14; ++f)
                for (int j = 0; j < tpl.face_size(f); ++j) {
                    Slot s{{k.oct, f}, j};
                    if (edge_of(tpl, s) == k && g.paired(s.f)) ++glued_slots;
                }
        }
        int k = static_cast<int>(members.size());
        bool closed = glued_slots == 2 * k;
        if (closed) {
            ++rep.interior_edge_classes;
            if (k != 4)
                complain("interior edge class of size " + std::to_string(k) + " (want 4)");
        } else {
            ++rep.boundary_edge_classes;
            if (k != 1 && k != 2)
                complain("boundary edge class of size " + std::to_string(k) + " (want 1 or 2)");
        }
    }

    // blue boundary: pairs of hexagons forming three-holed vertex spheres
    std::vector<SurfaceComponent> blues, reds;
    try {
        blues = surface_components(tpl, g, Color::Blue);
        reds = surface_components(tpl, g, Color::Red);
    } catch (const GluingConflict& e) {
        complain(e.what());
        rep.ok = false;
        return rep;
    }
    rep.vertex_spheres = static_cast<int>(blues.size());
    for (const auto& c : blues) {
        if (c.faces.size() != 2)
            complain("blue component with " + std::to_string(c.faces.size()) + " faces");
        if (c.stitches.size() != 3)
            complain("blue component with " + std::to_string(c.stitches.size()) + " stitches");
        if (c.boundary_circles != 3)
            complain("vertex sphere with " + std::to_string(c.boundary_circles) + " holes");
        if (c.euler != 2 - 3) // sphere minus three disks
            complain("vertex sphere with Euler characteristic " + std::to_string(c.euler));
    }

    // red boundary: annuli (two boundary circles) and tori
    for (const auto& c : reds) {
        if (c.euler != 0) {
            complain("red component with Euler characteristic " + std::to_string(c.euler));
            continue;
        }
        if (c.boundary_circles == 2) ++rep.annuli;
        else if (c.boundary_circles == 0) ++rep.tori;
        else complain("red component with " + std::to_string(c.boundary_circles) + " circles");
    }

    rep.ok = rep.violations.empty();
    return rep;
}

std::string gluing_json(const OctGluing& g) {
    const OctTemplate& tpl = OctTemplate::get();
    nlohmann::ordered_json j;
    j["octs"] = nlohmann::json::array();
    for (int oct = 0; oct < g.oct_count; ++oct) {
        nlohmann::ordered_json jo;
        jo["id"] = oct;
        jo["faces"] = nlohmann::json::array();
        for (int f = 0; f < 14; ++f) {
            nlohmann::ordered_json jf;
            jf["id"] = f;
            jf["color"] = tpl.color(f) == Color::Blue   ? "blue"
                          : tpl.color(f) == Color::White ? "white"
                                                         : "red";
            auto& verts = tpl.faces[static_cast<std::size_t>(f)].verts;
            nlohmann::json edges = nlohmann::json::array();
            for (std::size_t k = 0; k < verts.size(); ++k)
                edges.push_back({verts[k], verts[(k + 1) % verts.size()]});
            jf["edges"] = edges;
            jo["faces"].push_back(jf);
        }
        j["octs"].push_back(jo);
    }
    j["pairings"] = nlohmann::json::array();
    for (const auto& [a, pb] : g.pairings) {
        const auto& [b, m] = pb;
        if (!(a < b)) continue;
        j["pairings"].push_back({{"a", {{"oct", a.oct}, {"face", a.face}}},
                                 {"b", {{"oct", b.oct}, {"face", b.face}}},
                                 {"rot", {{"off", m.off}, {"dir", m.dir}}}});
    }
    nlohmann::ordered_json jb;
    jb["vertex_spheres"] = nlohmann::json::array();
    for (const auto& [v, s] : g.spheres) {
        nlohmann::ordered_json js;
        js["vertex"] = v;
        js["faces"] = {{{"oct", s.fa.oct}, {"face", s.fa.face}},
                       {{"oct", s.fb.oct}, {"face", s.fb.face}}};
        nlohmann::json holes = nlohmann::json::array();
        for (auto [slot, e] : s.hole_edge) holes.push_back({{"slot", slot}, {"edge", e}});
        js["holes"] = holes;
        jb["vertex_spheres"].push_back(js);
    }
    GluingReport rep = verify_gluing(g);
    jb["cusps"] = {{"annuli", rep.annuli}, {"tori", rep.tori}};
    j["boundary"] = jb;
    return j.dump(2);
}

std::string asymptotics_csv(const std::vector<AsymRow>& rows) {
    std::ostringstream os;
    os << "N,lhs,target,error\n";
    os.precision(12);
    for (const auto& r : rows)
        os << r.N << "," << r.lhs << "," << r.target << "," << r.error << "\n";
    return os.str();
}

} // namespace ktj

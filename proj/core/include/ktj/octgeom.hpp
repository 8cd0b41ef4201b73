#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ktj/ktg.hpp"
#include "ktj/lobachevsky.hpp"

namespace ktj {

/// Combinatorics of the truncated octahedron: 8 hexagonal faces (4 blue and
/// 4 white, alternating) and 6 red square truncation faces. One shared
/// template, built from the (0, +-1, +-2) permutation coordinates; face
/// cycles are counterclockwise viewed from outside.
struct OctTemplate {
    enum class Color { Blue, White, Red };

    struct Face {
        Color color;
        std::vector<int> verts; // cyclic corner list
    };

    std::vector<std::array<int, 3>> coords; // 24 vertices
    std::vector<Face> faces;                // 8 hexagons then 6 squares

    // hexagon index for a sign triple, square index for an axis/sign
    int hex(int sx, int sy, int sz) const;
    int square(int axis, int sign) const;
    bool is_hex(int f) const { return faces[static_cast<std::size_t>(f)].verts.size() == 6; }
    Color color(int f) const { return faces[static_cast<std::size_t>(f)].color; }
    int face_size(int f) const { return static_cast<int>(faces[static_cast<std::size_t>(f)].verts.size()); }

    // the face on the other side of edge slot j of face f, with its slot
    std::pair<int, int> neighbor(int f, int j) const;
    // red-adjacent edge slots of a hexagon, in cyclic order
    std::vector<int> red_slots(int f) const;
    // the square face adjacent at hexagon f's edge slot j (must be a red slot)
    int square_at(int f, int j) const;

    static const OctTemplate& get();

private:
    std::map<std::pair<int, int>, std::pair<int, int>> edge_neighbor_;
};

struct FaceRef {
    int oct = -1;
    int face = -1;
    auto operator<=>(const FaceRef&) const = default;
};

/// Corner-level face correspondence: corner g of one face maps to
/// (off + dir * g) mod 6 of its partner; dir = -1 reverses the cycle.
struct CornerMap {
    int off = 0;
    int dir = 1;
    int corner(int g) const { return ((off + dir * g) % 6 + 6) % 6; }
    int edge(int j) const { return dir == 1 ? corner(j) : ((off - j - 1) % 6 + 6) % 6; }
    CornerMap inverse() const { return dir == 1 ? CornerMap{(6 - off) % 6, 1} : *this; }
};

/// Face pairings of a collection of truncated octahedra, plus the boundary
/// bookkeeping the builder maintains (which blue faces form which vertex
/// sphere, and which square belongs to which graph edge tube).
struct OctGluing {
    int oct_count = 0;
    std::map<FaceRef, std::pair<FaceRef, CornerMap>> pairings; // both directions

    struct Sphere {
        int ktg_vertex = 0;
        FaceRef fa, fb;              // upper and lower blue face
        std::map<int, int> hole_edge; // red edge slot -> graph edge id (same on both faces)
    };
    std::map<int, Sphere> spheres; // by graph vertex

    // square tube labels: graph edge id, or, once an unzip closes the tube,
    // the negated ring id of the resulting cusp torus
    std::map<FaceRef, int> square_label;

    MoveStats stats;

    void pair(FaceRef a, FaceRef b, CornerMap m); // throws GluingConflict
    bool paired(FaceRef f) const { return pairings.count(f) != 0; }
};

/// Glue 2t+2 truncated octahedra realizing the exterior of the singly
/// augmented KTG of the sequence (every unzip treated as a 1-unzip; odd net
/// twist at an unzip flips to the diagonal blue identification).
OctGluing build_gluing(const MoveSequence& seq);

struct GluingReport {
    bool ok = false;
    std::vector<std::string> violations;
    int octs = 0;
    int white_pairings = 0;
    int interior_edge_classes = 0; // closed classes (all four wedges glued)
    int boundary_edge_classes = 0;
    int vertex_spheres = 0;
    int annuli = 0;
    int tori = 0;
};

/// Convention-independent checks of the paper's structural properties:
/// all white faces paired involutively, every edge class a 2-path, a 1-path
/// on the boundary, or a closed class of exactly 4; unglued blue faces pair
/// into 3-holed vertex spheres; red faces assemble into annuli and tori.
GluingReport verify_gluing(const OctGluing& g);

struct JSJReport {
    std::vector<int> seifert_pieces; // ring count of every >=2-ring unzip
    double hyperbolic_piece_volume = 0.0;
    double total_volume = 0.0;
    int octahedra = 0;
};

/// Volume bookkeeping: the hyperbolic JSJ chamber is the singly augmented
/// outside, (2t+2) regular ideal octahedra; Seifert chambers contribute 0.
JSJReport volume(const MoveSequence& seq); // throws NotAugmented

struct AsymRow {
    int N = 0;
    double lhs = 0.0;    // (2 pi / N) log sixj_N
    double target = 0.0; // 2 Vol(Oct)
    double error = 0.0;
};
std::vector<AsymRow> asymptotic_series(const std::vector<int>& Ns);

std::string gluing_json(const OctGluing& g);
std::string asymptotics_csv(const std::vector<AsymRow>& rows);

} // namespace ktj

#pragma once

#include <map>
#include <vector>

#include "ktj/qsymbols.hpp"
#include "ktj/ratfun.hpp"

namespace ktj {

/// Element of the (rectangular) Temperley-Lieb category: a linear combination
/// of crossingless matchings of `in` bottom and `out` top boundary points,
/// with RatFun coefficients. Closed loops arising in composition are resolved
/// into the coefficient via a factor of -A^2 - A^{-2} each.
class TLElement {
public:
    // partner[i] is the matched point; bottom points are 0..in-1 left to
    // right, top points in..in+out-1 left to right.
    using Matching = std::vector<int>;
    using Terms = std::map<Matching, RatFun>;

    TLElement(int in, int out) : in_(in), out_(out) {}

    static TLElement empty(); // 0 -> 0, coefficient 1
    static TLElement identity(int k);
    static TLElement cup();            // 0 -> 2
    static TLElement cap();            // 2 -> 0
    static TLElement e_gen();          // 2 -> 2, cup over cap
    static TLElement cross(int sign);  // Kauffman expansion of a crossing
    static TLElement htwist(int sign); // 1 -> 1 strand carrying a half twist
    static TLElement from_matching(int in, int out, Matching m, RatFun coef = RatFun::one());

    int in() const { return in_; }
    int out() const { return out_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TLElement operator+(const TLElement& o) const;
    TLElement scaled(const RatFun& c) const;
    TLElement tensor(const TLElement& right) const;
    // Stack `top` above this element; requires out() == top.in().
    TLElement compose(const TLElement& top) const;

    // Exact equality (coefficients compared by cross-multiplication).
    bool equals(const TLElement& o) const;

private:
    void add_term(const Matching& m, const RatFun& c);
    int in_;
    int out_;
    Terms terms_;
};

/// n-strand Jones-Wenzl projector by the Wenzl recursion; cached.
const TLElement& jw(int n);

/// Half twist braid on n bands: the n(n-1)/2 crossings plus one half twist
/// per strand.
TLElement halftwist_band(int n, int sign);

/// A closed diagram as a bottom-to-top stack of rows; each row is itself a
/// planar TLElement (typically a tensor of generators).
struct PlanarComposition {
    std::vector<TLElement> rows;
    int strand_cap = 8; // widths beyond this raise TooLarge

    PlanarComposition& stack(TLElement row) {
        rows.push_back(std::move(row));
        return *this;
    }
};

/// Evaluate a closed composition (width 0 at bottom and top) to its exact
/// bracket value. Throws NotClosed / TooLarge.
RatFun evaluate(const PlanarComposition& d);

// Wiring helpers for trivalent skein vertices. Groups are listed left to
// right; sizes are strand counts (color - 1 per edge).
// 0 -> (x+y+z) planar vertex with three groups.
TLElement vertex_wiring_up(int x, int y, int z);
// (x+y) -> z vertex: inner points cap together, outer points pass through.
TLElement vertex_merge(int x, int y, int z);
// mirror images
TLElement vertex_wiring_down(int x, int y, int z);
TLElement vertex_split(int z, int x, int y);

// Markov (trace) closure of an n -> n element: strands bent around the right.
RatFun trace_closure(const TLElement& x, int strand_cap = 16);
// Plat closure: nested cups below and caps above (n even).
RatFun plat_closure(const TLElement& x, int strand_cap = 16);

/// Brute-force bracket of the named primitives, built as explicit planar
/// compositions and evaluated by expansion.
RatFun bracket_theta(int a, int b, int c, int strand_cap = 16);
RatFun bracket_tet(const TetLabels& labels, int strand_cap = 24);
// closure of a color-k edge carrying s half twists
RatFun bracket_twisted_edge(int k, int s, int strand_cap = 16);
// closure of a color-k edge encircled by a color-N ring
RatFun bracket_encircled(int k, int N, int strand_cap = 16);

} // namespace ktj

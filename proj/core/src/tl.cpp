#include "ktj/tl.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <mutex>

#include "ktj/errors.hpp"

namespace ktj {

namespace {

RatFun loop_value() {
    return RatFun(-(TwistLaurent::a_pow(4) + TwistLaurent::a_pow(-4)));
}

} // namespace

TLElement TLElement::empty() {
    TLElement r(0, 0);
    r.terms_[{}] = RatFun::one();
    return r;
}

TLElement TLElement::identity(int k) {
    Matching m(static_cast<std::size_t>(2 * k));
    for (int i = 0; i < k; ++i) {
        m[static_cast<std::size_t>(i)] = k + i;
        m[static_cast<std::size_t>(k + i)] = i;
    }
    return from_matching(k, k, std::move(m));
}

TLElement TLElement::cup() { return from_matching(0, 2, {1, 0}); }

TLElement TLElement::cap() { return from_matching(2, 0, {1, 0}); }

TLElement TLElement::e_gen() { return from_matching(2, 2, {1, 0, 3, 2}); }

TLElement TLElement::cross(int sign) {
    // positive crossing: A * identity + A^{-1} * e
    TLElement r = identity(2).scaled(RatFun(TwistLaurent::a_pow(sign * 2)));
    return r + e_gen().scaled(RatFun(TwistLaurent::a_pow(-sign * 2)));
}

TLElement TLElement::htwist(int sign) {
    TwistLaurent h = sign > 0 ? TwistLaurent::h_unit() : TwistLaurent::monomial(Rat(-1), -6, 1);
    return identity(1).scaled(RatFun(h));
}

TLElement TLElement::from_matching(int in, int out, Matching m, RatFun coef) {
    assert(static_cast<int>(m.size()) == in + out);
    TLElement r(in, out);
    if (!coef.is_zero()) r.terms_[std::move(m)] = std::move(coef);
    return r;
}

void TLElement::add_term(const Matching& m, const RatFun& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

TLElement TLElement::operator+(const TLElement& o) const {
    assert(in_ == o.in_ && out_ == o.out_);
    TLElement r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

TLElement TLElement::scaled(const RatFun& c) const {
    TLElement r(in_, out_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
}

TLElement TLElement::tensor(const TLElement& right) const {
    TLElement r(in_ + right.in_, out_ + right.out_);
    // combined indexing: left bottom | right bottom | left top | right top
    auto remap_left = [&](int i) { return i < in_ ? i : i + right.in_; };
    auto remap_right = [&](int i) { return i < right.in_ ? in_ + i : in_ + out_ + i; };
    for (const auto& [ml, cl] : terms_) {
        for (const auto& [mr, cr] : right.terms_) {
            Matching m(static_cast<std::size_t>(r.in_ + r.out_));
            for (int i = 0; i < in_ + out_; ++i)
                m[static_cast<std::size_t>(remap_left(i))] =
                    remap_left(ml[static_cast<std::size_t>(i)]);
            for (int i = 0; i < right.in_ + right.out_; ++i)
                m[static_cast<std::size_t>(remap_right(i))] =
                    remap_right(mr[static_cast<std::size_t>(i)]);
            r.add_term(m, cl * cr);
        }
    }
    return r;
}

TLElement TLElement::compose(const TLElement& top) const {
    if (out_ != top.in_) throw DomainError("TLElement::compose: width mismatch");
    TLElement r(in_, top.out_);
    const int a = in_, b = out_, c = top.out_;
    const RatFun delta = loop_value();
    for (const auto& [mb, cb] : terms_) {
        for (const auto& [mt, ct] : top.terms_) {
            Matching result(static_cast<std::size_t>(a + c), -1);
            std::vector<bool> seen(static_cast<std::size_t>(b), false);
            // Walk from an external point through alternating matchings and
            // the b bridges joining this element's top to `top`'s bottom.
            auto follow = [&](int ext) {
                int side, p; // side 0: point of *this; side 1: point of top
                if (ext < a) { side = 0; p = ext; }
                else { side = 1; p = b + (ext - a); }
                for (;;) {
                    p = side == 0 ? mb[static_cast<std::size_t>(p)]
                                  : mt[static_cast<std::size_t>(p)];
                    if (side == 0) {
                        if (p < a) return p;
                        seen[static_cast<std::size_t>(p - a)] = true;
                        side = 1; p = p - a;
                    } else {
                        if (p >= b) return a + (p - b);
                        seen[static_cast<std::size_t>(p)] = true;
                        side = 0; p = a + p;
                    }
                }
            };
            for (int i = 0; i < a + c; ++i) {
                if (result[static_cast<std::size_t>(i)] != -1) continue;
                int j = follow(i);
                result[static_cast<std::size_t>(i)] = j;
                result[static_cast<std::size_t>(j)] = i;
            }
            int loops = 0;
            for (int s = 0; s < b; ++s) {
                if (seen[static_cast<std::size_t>(s)]) continue;
                ++loops;
                int side = 1, p = s; // start on top's bottom point s
                while (!seen[static_cast<std::size_t>(side == 1 ? p : p - a)]) {
                    seen[static_cast<std::size_t>(side == 1 ? p : p - a)] = true;
                    p = side == 0 ? mb[static_cast<std::size_t>(p)]
                                  : mt[static_cast<std::size_t>(p)];
                    if (side == 0) { side = 1; p = p - a; }
                    else { side = 0; p = a + p; }
                }
            }
            RatFun coef = cb * ct;
            for (int l = 0; l < loops; ++l) coef = coef * delta;
            r.add_term(result, coef);
        }
    }
    return r;
}

bool TLElement::equals(const TLElement& o) const {
    if (in_ != o.in_ || out_ != o.out_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (const auto& [m, c] : terms_) {
        auto it = o.terms_.find(m);
        if (it == o.terms_.end()) return false;
        if (!(c == it->second)) return false;
    }
    return true;
}

const TLElement& jw(int n) {
    static std::deque<TLElement> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (cache.empty()) {
        cache.push_back(TLElement::empty());
        cache.push_back(TLElement::identity(1));
    }
    while (static_cast<int>(cache.size()) <= n) {
        int k = static_cast<int>(cache.size()); // build jw(k)
        TLElement fprev = cache.back().tensor(TLElement::identity(1));
        TLElement e = TLElement::identity(k - 2).tensor(TLElement::e_gen());
        RatFun ratio = RatFun(qint_poly(k - 1)) / RatFun(qint_poly(k));
        TLElement second = fprev.compose(e).compose(fprev).scaled(ratio);
        cache.push_back(fprev + second);
    }
    return cache[static_cast<std::size_t>(n)];
}

RatFun evaluate(const PlanarComposition& d) {
    TLElement acc = TLElement::empty();
    for (const auto& row : d.rows) {
        if (row.in() > d.strand_cap || row.out() > d.strand_cap)
            throw TooLarge("evaluate: strand cap exceeded");
        acc = acc.compose(row);
    }
    if (acc.in() != 0 || acc.out() != 0) throw NotClosed("evaluate: diagram is not closed");
    auto it = acc.terms().find(TLElement::Matching{});
    return it == acc.terms().end() ? RatFun() : it->second;
}

TLElement vertex_wiring_up(int x, int y, int z) {
    // groups: x (left), y (middle), z (right); x-z arcs outermost
    int r = (x + z - y) / 2;
    int p = (x + y - z) / 2;
    int q = (y + z - x) / 2;
    if (r < 0 || p < 0 || q < 0 || (x + y + z) % 2 != 0)
        throw InadmissibleTriple("vertex_wiring: bad strand groups");
    int n = x + y + z;
    TLElement::Matching m(static_cast<std::size_t>(n), -1);
    auto link = [&](int i, int j) {
        m[static_cast<std::size_t>(i)] = j;
        m[static_cast<std::size_t>(j)] = i;
    };
    for (int t = 0; t < r; ++t) link(t, n - 1 - t);
    for (int t = 0; t < p; ++t) link(r + t, x + (p - 1 - t));
    for (int t = 0; t < q; ++t) link(x + p + t, x + y + (q - 1 - t));
    return TLElement::from_matching(0, n, std::move(m));
}

TLElement vertex_wiring_down(int x, int y, int z) {
    TLElement up = vertex_wiring_up(x, y, z);
    const auto& m = up.terms().begin()->first;
    return TLElement::from_matching(x + y + z, 0, m);
}

TLElement vertex_merge(int x, int y, int z) {
    // (x+y) -> z: inner caps between the groups, outer strands pass up
    int c = (x + y - z) / 2;
    int lx = x - c;
    int ly = y - c;
    if (c < 0 || lx < 0 || ly < 0 || (x + y + z) % 2 != 0)
        throw InadmissibleTriple("vertex_merge: bad strand groups");
    TLElement::Matching m(static_cast<std::size_t>(x + y + z), -1);
    auto link = [&](int i, int j) {
        m[static_cast<std::size_t>(i)] = j;
        m[static_cast<std::size_t>(j)] = i;
    };
    for (int t = 0; t < c; ++t) link(x - 1 - t, x + t);
    for (int t = 0; t < lx; ++t) link(t, x + y + t);
    for (int t = 0; t < ly; ++t) link(x + c + t, x + y + lx + t);
    return TLElement::from_matching(x + y, z, std::move(m));
}

TLElement vertex_split(int z, int x, int y) {
    TLElement up = vertex_merge(x, y, z);
    const auto& m = up.terms().begin()->first;
    // transpose bottom and top
    int in = z, out = x + y;
    TLElement::Matching t(static_cast<std::size_t>(in + out));
    auto old_index = [&](int i) { return i < in ? (x + y) + i : i - in; };
    std::vector<int> new_index(static_cast<std::size_t>(in + out));
    for (int i = 0; i < in + out; ++i) new_index[static_cast<std::size_t>(old_index(i))] = i;
    for (int i = 0; i < in + out; ++i)
        t[static_cast<std::size_t>(i)] =
            new_index[static_cast<std::size_t>(m[static_cast<std::size_t>(old_index(i))])];
    return TLElement::from_matching(in, out, std::move(t));
}

RatFun trace_closure(const TLElement& x, int strand_cap) {
    int n = x.in();
    if (x.out() != n) throw DomainError("trace_closure: element not square");
    PlanarComposition d;
    d.strand_cap = std::max(strand_cap, 2 * n);
    TLElement::Matching m(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        m[static_cast<std::size_t>(i)] = 2 * n - 1 - i;
        m[static_cast<std::size_t>(2 * n - 1 - i)] = i;
    }
    d.stack(TLElement::from_matching(0, 2 * n, m));
    d.stack(x.tensor(TLElement::identity(n)));
    d.stack(TLElement::from_matching(2 * n, 0, m));
    return evaluate(d);
}

RatFun plat_closure(const TLElement& x, int strand_cap) {
    int n = x.in();
    if (x.out() != n || n % 2 != 0) throw DomainError("plat_closure: need square even width");
    PlanarComposition d;
    d.strand_cap = std::max(strand_cap, n);
    TLElement::Matching m(static_cast<std::size_t>(n));
    for (int i = 0; i < n / 2; ++i) {
        m[static_cast<std::size_t>(i)] = n - 1 - i;
        m[static_cast<std::size_t>(n - 1 - i)] = i;
    }
    d.stack(TLElement::from_matching(0, n, m));
    d.stack(x);
    d.stack(TLElement::from_matching(n, 0, m));
    return evaluate(d);
}

RatFun bracket_theta(int a, int b, int c, int strand_cap) {
    if (!admissible(a, b, c)) throw InadmissibleTriple("bracket_theta");
    int x = a - 1, y = b - 1, z = c - 1;
    PlanarComposition d;
    d.strand_cap = strand_cap;
    d.stack(vertex_wiring_up(x, y, z));
    d.stack(jw(x).tensor(jw(y)).tensor(jw(z)));
    d.stack(vertex_wiring_down(x, y, z));
    return evaluate(d);
}

RatFun bracket_tet(const TetLabels& labels, int strand_cap) {
    if (!labels.valid()) throw InadmissibleTriple("bracket_tet");
    // planar layout: A = (j1,j2,j3) center, B = (j1,j5,j6) top,
    // C = (j2,j4,j6) bottom-left, D = (j3,j4,j5) bottom-right
    auto pr = [&](int i) { return labels.j[static_cast<std::size_t>(i)] - 1; };
    int p1 = pr(0), p2 = pr(1), p3 = pr(2), p4 = pr(3), p5 = pr(4), p6 = pr(5);
    PlanarComposition d;
    d.strand_cap = strand_cap;
    // C emits (j6 | j2 | j4), D emits (j4 | j3 | j5)
    d.stack(vertex_wiring_up(p6, p2, p4).tensor(vertex_wiring_up(p4, p3, p5)));
    // join the adjacent j4 groups through one projector
    {
        TLElement::Matching m(static_cast<std::size_t>(2 * p4));
        for (int i = 0; i < p4; ++i) {
            m[static_cast<std::size_t>(i)] = 2 * p4 - 1 - i;
            m[static_cast<std::size_t>(2 * p4 - 1 - i)] = i;
        }
        TLElement j4cap = jw(p4).tensor(TLElement::identity(p4))
                              .compose(TLElement::from_matching(2 * p4, 0, m));
        d.stack(TLElement::identity(p6 + p2).tensor(j4cap).tensor(TLElement::identity(p3 + p5)));
    }
    // projectors on j2, j3, then the central vertex A merging into j1
    d.stack(TLElement::identity(p6).tensor(jw(p2)).tensor(jw(p3)).tensor(TLElement::identity(p5)));
    d.stack(TLElement::identity(p6).tensor(vertex_merge(p2, p3, p1)).tensor(TLElement::identity(p5)));
    // projectors on j6, j1, j5, then the top vertex B
    d.stack(jw(p6).tensor(jw(p1)).tensor(jw(p5)));
    d.stack(vertex_wiring_down(p6, p1, p5));
    return evaluate(d);
}

// half twist braid on n bands including the per-strand half twist factors
TLElement halftwist_band(int n, int sign) {
    TLElement acc = TLElement::identity(n);
    for (int pass = n - 1; pass >= 1; --pass) {
        for (int i = 0; i < pass; ++i) {
            TLElement row = TLElement::identity(i)
                                .tensor(TLElement::cross(sign))
                                .tensor(TLElement::identity(n - i - 2));
            acc = acc.compose(row);
        }
    }
    TwistLaurent hpow = TwistLaurent::one();
    for (int i = 0; i < n; ++i)
        hpow *= (sign > 0 ? TwistLaurent::h_unit() : TwistLaurent::monomial(Rat(-1), -6, 1));
    return acc.scaled(RatFun(hpow));
}

RatFun bracket_twisted_edge(int k, int s, int strand_cap) {
    int n = k - 1;
    TLElement band = jw(n);
    int reps = s >= 0 ? s : -s;
    for (int i = 0; i < reps; ++i) band = band.compose(halftwist_band(n, s >= 0 ? 1 : -1));
    return trace_closure(band, strand_cap);
}

RatFun bracket_encircled(int k, int N, int strand_cap) {
    int kb = k - 1, nb = N - 1;
    PlanarComposition d;
    d.strand_cap = std::max(strand_cap, 2 * (kb + nb));
    TLElement::Matching band(static_cast<std::size_t>(2 * kb));
    for (int i = 0; i < kb; ++i) {
        band[static_cast<std::size_t>(i)] = 2 * kb - 1 - i;
        band[static_cast<std::size_t>(2 * kb - 1 - i)] = i;
    }
    d.stack(TLElement::from_matching(0, 2 * kb, band));
    d.stack(jw(kb).tensor(TLElement::identity(kb)));
    // ring cups to the left of the band: groups R1 | R2, nested
    TLElement::Matching ring(static_cast<std::size_t>(2 * nb));
    for (int i = 0; i < nb; ++i) {
        ring[static_cast<std::size_t>(i)] = 2 * nb - 1 - i;
        ring[static_cast<std::size_t>(2 * nb - 1 - i)] = i;
    }
    int width = 2 * nb + 2 * kb;
    d.stack(TLElement::from_matching(0, 2 * nb, ring).tensor(TLElement::identity(2 * kb)));
    // R2 (at [nb, 2nb)) passes right across the band's up-group, one adjacent
    // swap per row; the return pass uses the same crossing type, which is what
    // links the ring with the band.
    for (int step = 0; step < kb; ++step) {
        for (int s = nb - 1; s >= 0; --s) {
            int pos = nb + step + s;
            d.stack(TLElement::identity(pos).tensor(TLElement::cross(+1))
                        .tensor(TLElement::identity(width - pos - 2)));
        }
    }
    // ring projector, now at [nb+kb, 2nb+kb)
    d.stack(TLElement::identity(nb + kb).tensor(jw(nb)).tensor(TLElement::identity(kb)));
    // return pass
    for (int step = 0; step < kb; ++step) {
        for (int s = 0; s < nb; ++s) {
            int pos = nb + kb - 1 - step + s;
            d.stack(TLElement::identity(pos).tensor(TLElement::cross(+1))
                        .tensor(TLElement::identity(width - pos - 2)));
        }
    }
    d.stack(TLElement::from_matching(2 * nb, 0, ring).tensor(TLElement::identity(2 * kb)));
    d.stack(TLElement::from_matching(2 * kb, 0, band));
    return evaluate(d);
}

} // namespace ktj

#include <algorithm>
#include <map>

#include "ktj/errors.hpp"
#include "ktj/jones.hpp"

namespace ktj {

namespace {

Label label_of(const std::map<int, Label>& labels, int id) {
    auto it = labels.find(id);
    if (it == labels.end())
        throw NotReducible("build_expression: no label for component " + std::to_string(id));
    return it->second;
}

} // namespace

JonesExpr build_expression(const MoveSequence& seq, TwistMode mode) {
    Replay rep = replay_sequence(seq);
    JonesExpr expr;
    expr.split_components = seq.declared_split_components;

    // label every component of the final graph with the running color
    std::map<int, Label> labels;
    for (const auto& [e, ed] : rep.graph.edges) {
        (void)ed;
        labels[e] = Label::N();
    }
    for (const auto& [c, tw] : rep.graph.circles) {
        (void)tw;
        labels[c] = Label::N();
    }

    // reverse the moves, last first; each unzip opens a sum around the rest
    for (auto it = rep.traces.rbegin(); it != rep.traces.rend(); ++it) {
        const MoveTrace& tr = *it;
        JonesExpr::Layer layer;
        switch (tr.move.kind) {
            case Move::Kind::HalfTwist: {
                Atom a;
                a.kind = Atom::Kind::HalfTwist;
                a.labels = {label_of(labels, tr.move.target)};
                a.sign = tr.move.sign;
                layer.atoms.push_back(std::move(a));
                break;
            }
            case Move::Kind::Triangle: {
                Label la = label_of(labels, tr.outer_edges[0]);
                Label lb = label_of(labels, tr.outer_edges[1]);
                Label lc = label_of(labels, tr.outer_edges[2]);
                Label t1 = label_of(labels, tr.new_edges[0]);
                Label t2 = label_of(labels, tr.new_edges[1]);
                Label t3 = label_of(labels, tr.new_edges[2]);
                Atom tet;
                tet.kind = Atom::Kind::Tet;
                // vertex triples (a,b,c), (a,j5,j6), (b,j4,j6), (c,j4,j5)
                // with the triangle edges at j4 = t2, j5 = t3, j6 = t1
                tet.labels = {la, lb, lc, t2, t3, t1};
                layer.atoms.push_back(std::move(tet));
                Atom th;
                th.kind = Atom::Kind::Theta;
                th.labels = {la, lb, lc};
                th.exponent = -1;
                layer.atoms.push_back(std::move(th));
                // triangle edges disappear from the earlier graph
                for (int e : tr.new_edges) labels.erase(e);
                break;
            }
            case Move::Kind::Unzip: {
                if (tr.twist_at_unzip != 0 && mode == TwistMode::Strict)
                    throw TwistedUnzip("unzip of edge with net twist " +
                                       std::to_string(tr.twist_at_unzip) +
                                       " (strict mode); see lenient mode");
                // strand labels, read before un-welding; the first weld's
                // result may have been absorbed by the second
                int s1 = tr.strand_ids[0];
                if (tr.welds.size() == 2 &&
                    (tr.welds[1].parts[0] == s1 || tr.welds[1].parts[1] == s1))
                    s1 = tr.strand_ids[1];
                Label la = label_of(labels, s1);
                Label lb = label_of(labels, tr.strand_ids[1]);

                SumBinder binder{expr.num_vars++, la, lb};
                Label lc = Label::variable(binder.var);

                Atom fusion;
                fusion.kind = Atom::Kind::Fusion;
                fusion.labels = {la, lb, lc};
                layer.atoms.push_back(std::move(fusion));
                if (tr.move.rings > 0) {
                    Atom ring;
                    ring.kind = Atom::Kind::Ring;
                    ring.labels = {lc};
                    ring.exponent = tr.move.rings;
                    layer.atoms.push_back(std::move(ring));
                }
                if (tr.twist_at_unzip != 0) {
                    Atom corr;
                    corr.kind = Atom::Kind::TwistCorrection;
                    corr.labels = {lc};
                    corr.exponent = tr.twist_at_unzip;
                    layer.atoms.push_back(std::move(corr));
                }
                layer.binder = binder;

                // un-weld, last weld first, restoring the earlier labels
                for (auto w = tr.welds.rbegin(); w != tr.welds.rend(); ++w) {
                    Label merged = label_of(labels, w->merged_id);
                    labels.erase(w->merged_id);
                    labels[w->parts[0]] = merged;
                    labels[w->parts[1]] = merged;
                }
                labels[tr.move.target] = lc;
                break;
            }
        }
        expr.layers.push_back(std::move(layer));
    }

    // terminal tetrahedron: edges e1..e6 at positions (j1..j6) = (e1,e2,e3,e5,e6,e4)
    JonesExpr::Layer last;
    Atom tet;
    tet.kind = Atom::Kind::Tet;
    tet.labels = {label_of(labels, 1), label_of(labels, 2), label_of(labels, 3),
                  label_of(labels, 5), label_of(labels, 6), label_of(labels, 4)};
    last.atoms.push_back(std::move(tet));
    expr.layers.push_back(std::move(last));
    return expr;
}

} // namespace ktj

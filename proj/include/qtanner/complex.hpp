#ifndef QTANNER_COMPLEX_HPP
#define QTANNER_COMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtanner/error.hpp"
#include "qtanner/graph.hpp"

namespace qtanner {

/// Square (e1, e2, e3, e4) with e1, e2 A-edges and e3, e4 B-edges:
///
///     (w',1) --a-- e2 --a'-- (v',0)
///       |                      |
///       e3 b'                  e4 b'
///       |  b                   |  b
///     (v,0) --a-- e1 --aw--- (w,1)
///
/// Labels are taken in the local view of the corner they are written next to:
/// e1 is labelled a at v and aw at w, e3 is labelled b at v and bw at w', e2 is
/// labelled a at w' and a' at v', e4 is labelled b at w and b' at v'.
struct Square {
    std::uint32_t e1 = 0, e2 = 0, e3 = 0, e4 = 0;
    Vertex v = 0, w = 0, w_prime = 0, v_prime = 0;
    Label a = 0, b = 0;          ///< at v
    Label a_prime = 0, b_prime = 0;   ///< at v'
    Label a_at_w = 0;            ///< label of e1 at w
    Label b_at_w_prime = 0;      ///< label of e3 at w'

    friend bool operator==(const Square&, const Square&) = default;
};

struct SquareComplex {
    LabeledGraph a;
    LabeledGraph b;
    Partition partition;
    std::size_t delta = 0;
    std::vector<Vertex> v0;   ///< side-0 vertices, increasing
    std::vector<Vertex> v1;   ///< side-1 vertices, increasing
    std::vector<Square> squares;
};

/// Diagonal graph of a square complex. Labels are encoded as a*Δ + b, so the
/// local view of a vertex lists (a1,b1), ..., (a1,bΔ), ..., (aΔ,bΔ) in label order.
struct SquareGraph {
    unsigned side = 0;
    std::size_t delta = 0;
    std::vector<Vertex> vertices;   ///< complex vertex id of each graph vertex
    LabeledGraph graph;

    std::size_t n_edges() const { return graph.n_edges(); }
};

inline Label pair_label(Label a, Label b, std::size_t delta) { return static_cast<Label>(a * delta + b); }
inline std::pair<Label, Label> split_label(Label ab, std::size_t delta)
{
    return {static_cast<Label>(ab / delta), static_cast<Label>(ab % delta)};
}

/// Checks the preconditions in a fixed order, each with its own error kind.
inline void validate_complex_inputs(const LabeledGraph& a, const LabeledGraph& b, const Partition& partition)
{
    if (a.degree() != b.degree())
        throw Error(ErrorKind::degree_mismatch, "graphs have degrees " + std::to_string(a.degree()) + " and " +
                                                    std::to_string(b.degree()));
    if (a.n_vertices() != b.n_vertices()) throw Error(ErrorKind::dimension, "graphs live on different vertex sets");
    if (a.degree() == 0) throw Error(ErrorKind::degree_mismatch, "degree must be positive");
    if (!a.is_bipartite_on(partition)) throw Error(ErrorKind::not_bipartite, "G_A is not bipartite on the given partition");
    if (!b.is_bipartite_on(partition)) throw Error(ErrorKind::not_bipartite, "G_B is not bipartite on the given partition");
    if (!commute_check(a, b)) throw Error(ErrorKind::not_commuting, "the permutations of G_A and G_B do not commute");
    const auto overlap = overlap_check(a, b);
    if (!overlap.empty())
        throw Error(ErrorKind::overlapping_edges, std::to_string(overlap.size()) + " vertex pairs are joined in both graphs, first (" +
                                                      std::to_string(overlap.front().first) + "," +
                                                      std::to_string(overlap.front().second) + ")");
    if (!inverse_pair_compat(a, b))
        throw Error(ErrorKind::pairing_incompatible, "label/inverse pairs differ across an edge");
}

/// Schreier complex: one square per (v in V0, a, b), with (e1,e2,e3,e4) and
/// (e2,e1,e4,e3) identified. The kept orientation has the smaller (e1, e3).
inline SquareComplex build_complex(const LabeledGraph& a, const LabeledGraph& b, const Partition& partition)
{
    validate_complex_inputs(a, b, partition);
    SquareComplex x;
    x.a = a;
    x.b = b;
    x.partition = partition;
    x.delta = a.degree();
    for (Vertex v = 0; v < partition.size(); ++v) (partition[v] == 0 ? x.v0 : x.v1).push_back(v);
    const std::size_t d = x.delta;

    std::vector<Square> generated;
    generated.reserve(x.v0.size() * d * d);
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> by_key;
    for (Vertex v : x.v0)
        for (Label la = 0; la < d; ++la)
            for (Label lb = 0; lb < d; ++lb) {
                const HalfEdge h1 = a.out(v, la), h3 = b.out(v, lb);
                const Vertex w = a.target(h1), wp = b.target(h3);
                const HalfEdge h2 = a.out(wp, la);
                const Vertex vp = a.target(h2);
                const HalfEdge h4 = b.out(w, lb);
                if (b.target(h4) != vp)
                    throw Error(ErrorKind::not_commuting, "square at vertex " + std::to_string(v) + " does not close");
                Square q;
                q.e1 = h1.edge;
                q.e2 = h2.edge;
                q.e3 = h3.edge;
                q.e4 = h4.edge;
                q.v = v;
                q.w = w;
                q.w_prime = wp;
                q.v_prime = vp;
                q.a = la;
                q.b = lb;
                q.a_prime = a.label(a.partner(h2));
                q.b_prime = b.label(b.partner(h4));
                q.a_at_w = a.label(a.partner(h1));
                q.b_at_w_prime = b.label(b.partner(h3));
                by_key.emplace(std::make_pair(q.e1, q.e3), generated.size());
                generated.push_back(q);
            }

    for (const Square& q : generated) {
        const auto it = by_key.find({q.e2, q.e4});
        const bool mirrored = it != by_key.end() && generated[it->second].e2 == q.e1 && generated[it->second].e4 == q.e3;
        if (!mirrored)
            throw Error(ErrorKind::pairing_incompatible, "square at vertex " + std::to_string(q.v) +
                                                             " is not generated again from its opposite corner");
        if (std::make_pair(q.e1, q.e3) < std::make_pair(q.e2, q.e4)) x.squares.push_back(q);
    }
    if (2 * x.squares.size() != x.v0.size() * d * d)
        throw Error(ErrorKind::pairing_incompatible, "square count differs from |V0| Δ² / 2");
    return x;
}

inline SquareComplex build_complex(const LabeledGraph& a, const LabeledGraph& b)
{
    if (!a.partition()) throw Error(ErrorKind::not_bipartite, "G_A carries no partition; pass one explicitly");
    return build_complex(a, b, *a.partition());
}

/// (G□0, G□1). Edge i of both graphs comes from square i.
inline std::pair<SquareGraph, SquareGraph> square_graphs(const SquareComplex& x)
{
    const std::size_t d = x.delta, n = x.partition.size();
    std::vector<Vertex> local(n, 0);
    for (std::size_t i = 0; i < x.v0.size(); ++i) local[x.v0[i]] = static_cast<Vertex>(i);
    for (std::size_t i = 0; i < x.v1.size(); ++i) local[x.v1[i]] = static_cast<Vertex>(i);

    std::vector<Edge> e0, e1;
    e0.reserve(x.squares.size());
    e1.reserve(x.squares.size());
    for (const Square& q : x.squares) {
        e0.push_back(Edge{{local[q.v], local[q.v_prime]}, {pair_label(q.a, q.b, d), pair_label(q.a_prime, q.b_prime, d)}, false});
        e1.push_back(Edge{{local[q.w], local[q.w_prime]}, {pair_label(q.a_at_w, q.b, d), pair_label(q.a, q.b_at_w_prime, d)}, false});
    }
    SquareGraph g0{0, d, x.v0, LabeledGraph(x.v0.size(), d * d, std::move(e0))};
    SquareGraph g1{1, d, x.v1, LabeledGraph(x.v1.size(), d * d, std::move(e1))};
    return {std::move(g0), std::move(g1)};
}

} // namespace qtanner

#endif // QTANNER_COMPLEX_HPP

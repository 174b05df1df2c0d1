#ifndef QTANNER_GRAPH_HPP
#define QTANNER_GRAPH_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qtanner/error.hpp"
#include "qtanner/group.hpp"
#include "qtanner/int_matrix.hpp"

namespace qtanner {

using Vertex = std::uint32_t;
using Label = std::uint32_t;
using Partition = std::vector<std::uint8_t>;

/// Bijection on [0, n) in one-line notation.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<Vertex> image) : image_(std::move(image))
    {
        std::vector<bool> seen(image_.size(), false);
        for (Vertex x : image_) {
            if (x >= image_.size() || seen[x]) throw Error(ErrorKind::invalid_spec, "permutation image is not a bijection");
            seen[x] = true;
        }
    }

    static Permutation identity(std::size_t n)
    {
        std::vector<Vertex> image(n);
        std::iota(image.begin(), image.end(), Vertex{0});
        return Permutation(std::move(image));
    }

    /// v -> v + shift mod n
    static Permutation rotation(std::size_t n, long long shift)
    {
        std::vector<Vertex> image(n);
        const long long m = static_cast<long long>(n);
        for (std::size_t v = 0; v < n; ++v)
            image[v] = static_cast<Vertex>(((static_cast<long long>(v) + shift) % m + m) % m);
        return Permutation(std::move(image));
    }

    std::size_t size() const { return image_.size(); }
    Vertex operator()(Vertex v) const { return image_[v]; }
    const std::vector<Vertex>& image() const { return image_; }

    Permutation inverse() const
    {
        std::vector<Vertex> inv(image_.size());
        for (std::size_t v = 0; v < image_.size(); ++v) inv[image_[v]] = static_cast<Vertex>(v);
        return Permutation(std::move(inv));
    }

    /// (*this after other)(v) = (*this)(other(v))
    Permutation after(const Permutation& other) const
    {
        if (other.size() != size()) throw Error(ErrorKind::dimension, "composing permutations of different sizes");
        std::vector<Vertex> out(size());
        for (std::size_t v = 0; v < size(); ++v) out[v] = image_[other.image_[v]];
        return Permutation(std::move(out));
    }

    bool commutes_with(const Permutation& other) const
    {
        if (other.size() != size()) throw Error(ErrorKind::dimension, "permutations act on different sets");
        for (std::size_t v = 0; v < size(); ++v)
            if (image_[other.image_[v]] != other.image_[image_[v]]) return false;
        return true;
    }

    bool is_identity() const
    {
        for (std::size_t v = 0; v < size(); ++v)
            if (image_[v] != v) return false;
        return true;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<Vertex> image_;
};

/// Schreier graph data: Δ labelled permutations and the involution pairing each
/// label with the label of the reverse half-edge. Labels are 0-based here.
struct SchreierSpec {
    std::size_t n_vertices = 0;
    std::vector<Permutation> perms;
    std::vector<Label> pairing;
    std::optional<Partition> partition;

    std::size_t degree() const { return perms.size(); }

    void validate() const
    {
        if (pairing.size() != perms.size())
            throw Error(ErrorKind::invalid_spec, "pairing has " + std::to_string(pairing.size()) + " entries for " +
                                                     std::to_string(perms.size()) + " labels");
        for (std::size_t a = 0; a < perms.size(); ++a) {
            if (perms[a].size() != n_vertices)
                throw Error(ErrorKind::invalid_spec, "permutation " + std::to_string(a) + " does not act on n vertices");
            const Label b = pairing[a];
            if (b >= perms.size()) throw Error(ErrorKind::invalid_spec, "pairing entry out of range for label " + std::to_string(a));
            if (pairing[b] != a) throw Error(ErrorKind::invalid_spec, "pairing is not an involution at label " + std::to_string(a));
            if (perms[b] != perms[a].inverse())
                throw Error(ErrorKind::invalid_spec, "label " + std::to_string(a) + " is paired with label " +
                                                         std::to_string(b) + " whose permutation is not its inverse");
        }
        if (partition && partition->size() != n_vertices)
            throw Error(ErrorKind::invalid_spec, "partition length does not match vertex count");
        if (partition)
            for (auto s : *partition)
                if (s > 1) throw Error(ErrorKind::invalid_spec, "partition entries must be 0 or 1");
    }
};

/// Undirected edge made of one or two half-edges. Half-edge 0 runs u -> v with
/// label `label[0]` at u; half-edge 1 runs v -> u with label `label[1]` at v. A
/// folded edge is a self-loop whose single half-edge is paired with itself.
struct Edge {
    std::array<Vertex, 2> end{};
    std::array<Label, 2> label{};
    bool folded = false;

    std::size_t half_edge_count() const { return folded ? 1 : 2; }
    bool is_loop() const { return end[0] == end[1]; }

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed view of one slot in a local view.
struct HalfEdge {
    std::uint32_t edge = 0;
    std::uint8_t side = 0;   ///< which end of the edge is the source
};

/// Δ-regular well-labelled (multi)graph. Every vertex has exactly one outgoing
/// and one incoming half-edge per label in [0, Δ).
class LabeledGraph {
public:
    LabeledGraph() = default;

    LabeledGraph(std::size_t n_vertices, std::size_t degree, std::vector<Edge> edges,
                 std::optional<Partition> partition = std::nullopt)
        : n_(n_vertices), degree_(degree), edges_(std::move(edges)), partition_(std::move(partition))
    {
        index_and_validate();
    }

    std::size_t n_vertices() const { return n_; }
    std::size_t degree() const { return degree_; }
    std::size_t n_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }
    const std::optional<Partition>& partition() const { return partition_; }

    LabeledGraph with_partition(Partition p) const { return LabeledGraph(n_, degree_, edges_, std::move(p)); }

    /// Outgoing half-edge at v carrying label a.
    HalfEdge out(Vertex v, Label a) const { return out_[static_cast<std::size_t>(v) * degree_ + a]; }

    Vertex source(HalfEdge h) const { return edges_[h.edge].end[h.side]; }
    Vertex target(HalfEdge h) const { return edges_[h.edge].end[edges_[h.edge].folded ? 0 : 1 - h.side]; }
    Label label(HalfEdge h) const { return edges_[h.edge].label[h.side]; }
    /// The reverse half-edge (the half-edge itself for a folded loop).
    HalfEdge partner(HalfEdge h) const
    {
        return edges_[h.edge].folded ? h : HalfEdge{h.edge, static_cast<std::uint8_t>(1 - h.side)};
    }

    /// Vertex reached from v along label a.
    Vertex step(Vertex v, Label a) const { return target(out(v, a)); }

    bool is_loop_free() const
    {
        return std::none_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
    }

    /// M_ij = number of half-edges from j to i.
    IntMatrix adjacency() const
    {
        IntMatrix m(n_, n_);
        for (const Edge& e : edges_) {
            if (e.folded) {
                m(e.end[0], e.end[0]) += 1;
                continue;
            }
            m(e.end[1], e.end[0]) += 1;
            m(e.end[0], e.end[1]) += 1;
        }
        return m;
    }

    /// Connected components as a vertex -> component id map (ids in order of first vertex).
    std::vector<std::uint32_t> components() const
    {
        std::vector<std::uint32_t> comp(n_, UINT32_MAX);
        std::uint32_t next = 0;
        std::vector<Vertex> stack;
        for (Vertex s = 0; s < n_; ++s) {
            if (comp[s] != UINT32_MAX) continue;
            comp[s] = next;
            stack.push_back(s);
            while (!stack.empty()) {
                const Vertex v = stack.back();
                stack.pop_back();
                for (Label a = 0; a < degree_; ++a) {
                    const Vertex w = step(v, a);
                    if (comp[w] == UINT32_MAX) {
                        comp[w] = next;
                        stack.push_back(w);
                    }
                }
            }
            ++next;
        }
        return comp;
    }

    std::size_t component_count() const
    {
        const auto comp = components();
        return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    }

    /// Some proper 2-colouring, or nullopt when the graph has an odd cycle or a loop.
    std::optional<Partition> find_bipartition() const
    {
        Partition colour(n_, 2);
        std::vector<Vertex> stack;
        for (Vertex s = 0; s < n_; ++s) {
            if (colour[s] != 2) continue;
            colour[s] = 0;
            stack.push_back(s);
            while (!stack.empty()) {
                const Vertex v = stack.back();
                stack.pop_back();
                for (Label a = 0; a < degree_; ++a) {
                    const Vertex w = step(v, a);
                    if (colour[w] == 2) {
                        colour[w] = static_cast<std::uint8_t>(1 - colour[v]);
                        stack.push_back(w);
                    } else if (colour[w] == colour[v]) {
                        return std::nullopt;
                    }
                }
            }
        }
        return colour;
    }

    bool is_bipartite() const { return find_bipartition().has_value(); }

    /// Every edge crosses the given partition.
    bool is_bipartite_on(const Partition& p) const
    {
        if (p.size() != n_) return false;
        return std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return p[e.end[0]] != p[e.end[1]]; });
    }

    /// Permutation of each label, read off the outgoing half-edges.
    std::vector<Permutation> permutations() const
    {
        std::vector<Permutation> perms;
        perms.reserve(degree_);
        for (Label a = 0; a < degree_; ++a) {
            std::vector<Vertex> image(n_);
            for (Vertex v = 0; v < n_; ++v) image[v] = step(v, a);
            perms.emplace_back(std::move(image));
        }
        return perms;
    }

    /// Sorted multiset of (min endpoint, max endpoint) pairs.
    std::vector<std::pair<Vertex, Vertex>> endpoint_multiset() const
    {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edges_.size());
        for (const Edge& e : edges_) out.emplace_back(std::minmax(e.end[0], e.end[1]));
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b)
    {
        return a.n_ == b.n_ && a.degree_ == b.degree_ && a.edges_ == b.edges_ && a.partition_ == b.partition_;
    }

private:
    void index_and_validate()
    {
        if (partition_ && partition_->size() != n_)
            throw Error(ErrorKind::invalid_spec, "partition length does not match vertex count");
        constexpr std::uint32_t unset = UINT32_MAX;
        out_.assign(n_ * degree_, HalfEdge{unset, 0});
        std::vector<std::uint8_t> in_count(n_ * degree_, 0);
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            if (e.folded && e.end[0] != e.end[1])
                throw Error(ErrorKind::invalid_spec, "folded edge " + std::to_string(i) + " is not a self-loop");
            for (std::size_t s = 0; s < e.half_edge_count(); ++s) {
                const Vertex src = e.end[s];
                const Vertex dst = e.end[e.folded ? 0 : 1 - s];
                const Label a = e.label[s];
                if (src >= n_ || dst >= n_) throw Error(ErrorKind::invalid_spec, "edge endpoint out of range");
                if (a >= degree_) throw Error(ErrorKind::invalid_spec, "label out of range on edge " + std::to_string(i));
                HalfEdge& slot = out_[static_cast<std::size_t>(src) * degree_ + a];
                if (slot.edge != unset)
                    throw Error(ErrorKind::invalid_spec, "vertex " + std::to_string(src) + " has two outgoing half-edges labelled " +
                                                             std::to_string(a));
                slot = HalfEdge{static_cast<std::uint32_t>(i), static_cast<std::uint8_t>(s)};
                if (++in_count[static_cast<std::size_t>(dst) * degree_ + a] > 1)
                    throw Error(ErrorKind::invalid_spec, "vertex " + std::to_string(dst) + " has two incoming half-edges labelled " +
                                                             std::to_string(a));
            }
        }
        for (std::size_t slot = 0; slot < out_.size(); ++slot)
            if (out_[slot].edge == unset)
                throw Error(ErrorKind::invalid_spec, "vertex " + std::to_string(slot / degree_) + " has no outgoing half-edge labelled " +
                                                         std::to_string(slot % degree_));
    }

    std::size_t n_ = 0;
    std::size_t degree_ = 0;
    std::vector<Edge> edges_;
    std::optional<Partition> partition_;
    std::vector<HalfEdge> out_;
};

/// Orders edges by (min endpoint, max endpoint, label at min endpoint), stable
/// for parallel edges, and orients each edge so that end[0] is the smaller endpoint.
inline std::vector<Edge> canonical_edge_order(std::vector<Edge> edges)
{
    for (Edge& e : edges) {
        const bool flip = e.end[1] < e.end[0] || (e.end[0] == e.end[1] && !e.folded && e.label[1] < e.label[0]);
        if (flip) {
            std::swap(e.end[0], e.end[1]);
            std::swap(e.label[0], e.label[1]);
        }
    }
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.end[0], x.end[1], x.label[0]) < std::tie(y.end[0], y.end[1], y.label[0]);
    });
    return edges;
}

/// Pairs half-edge (v, π_a(v), a) with (π_a(v), v, pairing(a)).
inline LabeledGraph schreier_graph(const SchreierSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.n_vertices, d = spec.degree();
    std::vector<bool> used(n * d, false);
    std::vector<Edge> edges;
    edges.reserve(n * d / 2 + 1);
    for (Vertex v = 0; v < n; ++v)
        for (Label a = 0; a < d; ++a) {
            if (used[v * d + a]) continue;
            const Vertex w = spec.perms[a](v);
            const Label b = spec.pairing[a];
            used[v * d + a] = true;
            if (w == v && b == a) {
                edges.push_back(Edge{{v, v}, {a, a}, true});
                continue;
            }
            used[w * d + b] = true;
            edges.push_back(Edge{{v, w}, {a, b}, false});
        }
    return LabeledGraph(n, d, canonical_edge_order(std::move(edges)), spec.partition);
}

/// Recovers the Schreier data of a well-labelled graph.
inline SchreierSpec schreier_spec_of(const LabeledGraph& g)
{
    SchreierSpec spec;
    spec.n_vertices = g.n_vertices();
    spec.perms = g.permutations();
    spec.partition = g.partition();
    spec.pairing.assign(g.degree(), 0);
    std::vector<bool> consistent(g.degree(), true);
    for (Label a = 0; a < g.degree(); ++a) {
        const Label b = g.label(g.partner(g.out(0, a)));
        spec.pairing[a] = b;
        for (Vertex v = 1; v < g.n_vertices(); ++v)
            if (g.label(g.partner(g.out(v, a))) != b)
                throw Error(ErrorKind::pairing_incompatible, "label " + std::to_string(a) +
                                                                 " is not paired with a single label across all vertices");
    }
    return spec;
}

enum class CayleySide { left, right };

/// Left: g -> a g. Right: g -> g b. Duplicate labels are paired occurrence by
/// occurrence with their inverses; self-inverse labels are paired with themselves.
inline SchreierSpec cayley_graph(const GroupTable& group, const std::vector<GroupTable::Element>& labels, CayleySide side)
{
    SchreierSpec spec;
    spec.n_vertices = group.order();
    for (auto a : labels) {
        if (a >= group.order()) throw Error(ErrorKind::invalid_spec, "label is not a group element");
        std::vector<Vertex> image(group.order());
        for (GroupTable::Element g = 0; g < group.order(); ++g)
            image[g] = side == CayleySide::left ? group.mul(a, g) : group.mul(g, a);
        spec.perms.emplace_back(std::move(image));
    }
    constexpr Label unpaired = UINT32_MAX;
    spec.pairing.assign(labels.size(), unpaired);
    for (Label i = 0; i < labels.size(); ++i) {
        if (spec.pairing[i] != unpaired) continue;
        const auto inv = group.inverse(labels[i]);
        if (inv == labels[i]) {
            spec.pairing[i] = i;
            continue;
        }
        bool matched = false;
        for (Label j = i + 1; j < labels.size() && !matched; ++j)
            if (spec.pairing[j] == unpaired && labels[j] == inv) {
                spec.pairing[i] = j;
                spec.pairing[j] = i;
                matched = true;
            }
        if (!matched)
            throw Error(ErrorKind::invalid_spec, "label multiset is not symmetric: element " + std::to_string(labels[i]) +
                                                     " has no matching inverse; supply an explicit pairing");
    }
    spec.validate();
    return spec;
}

/// Every permutation of `a` commutes with every permutation of `b`.
inline bool commute_check(const SchreierSpec& a, const SchreierSpec& b)
{
    if (a.n_vertices != b.n_vertices) throw Error(ErrorKind::dimension, "commute check on different vertex counts");
    for (const auto& p : a.perms)
        for (const auto& q : b.perms)
            if (!p.commutes_with(q)) return false;
    return true;
}

inline bool commute_check(const LabeledGraph& a, const LabeledGraph& b)
{
    if (a.n_vertices() != b.n_vertices()) throw Error(ErrorKind::dimension, "commute check on different vertex counts");
    const auto pa = a.permutations();
    const auto pb = b.permutations();
    for (const auto& p : pa)
        for (const auto& q : pb)
            if (!p.commutes_with(q)) return false;
    return true;
}

/// Unordered vertex pairs (v <= w) joined by at least one edge in both graphs.
inline std::vector<std::pair<Vertex, Vertex>> overlap_check(const LabeledGraph& a, const LabeledGraph& b)
{
    if (a.n_vertices() != b.n_vertices()) throw Error(ErrorKind::dimension, "overlap check on different vertex counts");
    auto ea = a.endpoint_multiset();
    auto eb = b.endpoint_multiset();
    ea.erase(std::unique(ea.begin(), ea.end()), ea.end());
    eb.erase(std::unique(eb.begin(), eb.end()), eb.end());
    std::vector<std::pair<Vertex, Vertex>> common;
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(common));
    return common;
}

namespace detail {

/// Sorted (label here, label at the far end) pairs of the local view at v.
inline std::vector<std::pair<Label, Label>> inverse_pairs(const LabeledGraph& g, Vertex v)
{
    std::vector<std::pair<Label, Label>> out;
    out.reserve(g.degree());
    for (Label a = 0; a < g.degree(); ++a) out.emplace_back(a, g.label(g.partner(g.out(v, a))));
    return out;
}

inline bool inverse_pairs_constant_along(const LabeledGraph& along, const LabeledGraph& other)
{
    for (const Edge& e : along.edges())
        if (inverse_pairs(other, e.end[0]) != inverse_pairs(other, e.end[1])) return false;
    return true;
}

} // namespace detail

/// For every edge (v, w) of `a`, the label/inverse-label pairs of the local view
/// of `b` agree at v and w, and symmetrically with the roles swapped. Pairs are
/// read as (label at the vertex, label of the same edge at its far end).
inline bool inverse_pair_compat(const LabeledGraph& a, const LabeledGraph& b)
{
    if (a.n_vertices() != b.n_vertices()) throw Error(ErrorKind::dimension, "graphs live on different vertex sets");
    return detail::inverse_pairs_constant_along(a, b) && detail::inverse_pairs_constant_along(b, a);
}

/// Vertex (v, s) of a two-sheeted cover is numbered s*n + v.
inline Vertex sheet_vertex(std::size_t n, Vertex v, unsigned sheet) { return static_cast<Vertex>(sheet * n + v); }

inline Partition sheet_partition(std::size_t n)
{
    Partition p(2 * n, 0);
    std::fill(p.begin() + static_cast<std::ptrdiff_t>(n), p.end(), 1);
    return p;
}

/// Bipartite double cover: each half-edge (v, w, a) becomes an edge (v,0)-(w,1)
/// carrying the same labels. Loops become proper edges between the two sheets.
inline LabeledGraph bipartite_double_cover(const LabeledGraph& g)
{
    const std::size_t n = g.n_vertices();
    std::vector<Edge> edges;
    edges.reserve(2 * g.n_edges());
    for (const Edge& e : g.edges()) {
        if (e.folded) {
            edges.push_back(Edge{{sheet_vertex(n, e.end[0], 0), sheet_vertex(n, e.end[0], 1)}, {e.label[0], e.label[0]}, false});
            continue;
        }
        edges.push_back(Edge{{sheet_vertex(n, e.end[0], 0), sheet_vertex(n, e.end[1], 1)}, {e.label[0], e.label[1]}, false});
        edges.push_back(Edge{{sheet_vertex(n, e.end[1], 0), sheet_vertex(n, e.end[0], 1)}, {e.label[1], e.label[0]}, false});
    }
    return LabeledGraph(2 * n, g.degree(), canonical_edge_order(std::move(edges)), sheet_partition(n));
}

/// Cover at the permutation level: π(v, s) = (π(v), 1 - s).
inline SchreierSpec double_cover_spec(const SchreierSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.n_vertices;
    SchreierSpec out;
    out.n_vertices = 2 * n;
    out.pairing = spec.pairing;
    for (const auto& p : spec.perms) {
        std::vector<Vertex> image(2 * n);
        for (Vertex v = 0; v < n; ++v) {
            image[v] = sheet_vertex(n, p(v), 1);
            image[n + v] = sheet_vertex(n, p(v), 0);
        }
        out.perms.emplace_back(std::move(image));
    }
    out.partition = sheet_partition(n);
    return out;
}

/// Two disjoint copies: π(v, s) = (π(v), s).
inline SchreierSpec two_copies_spec(const SchreierSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.n_vertices;
    SchreierSpec out;
    out.n_vertices = 2 * n;
    out.pairing = spec.pairing;
    for (const auto& p : spec.perms) {
        std::vector<Vertex> image(2 * n);
        for (Vertex v = 0; v < n; ++v) {
            image[v] = sheet_vertex(n, p(v), 0);
            image[n + v] = sheet_vertex(n, p(v), 1);
        }
        out.perms.emplace_back(std::move(image));
    }
    out.partition = sheet_partition(n);
    return out;
}

/// Appends a self-paired identity label, i.e. one folded self-loop per vertex.
inline SchreierSpec with_self_loops(const SchreierSpec& spec, std::size_t count = 1)
{
    SchreierSpec out = spec;
    for (std::size_t i = 0; i < count; ++i) {
        out.pairing.push_back(static_cast<Label>(out.perms.size()));
        out.perms.push_back(Permutation::identity(spec.n_vertices));
    }
    out.validate();
    return out;
}

/// Quadripartite construction: (double cover of a, two copies of b) on the
/// shared vertex set V x {0, 1}. The two outputs commute and have no
/// overlapping edges; only the first is bipartite on the sheet partition, so
/// feeding them to the square complex needs a further double cover of both.
inline std::pair<SchreierSpec, SchreierSpec> quadripartite_pair(const SchreierSpec& a, const SchreierSpec& b)
{
    if (a.n_vertices != b.n_vertices) throw Error(ErrorKind::dimension, "quadripartite pair on different vertex counts");
    if (!commute_check(a, b)) throw Error(ErrorKind::not_commuting, "quadripartite construction needs commuting inputs");
    return {double_cover_spec(a), two_copies_spec(b)};
}

/// Cover of both graphs of a commuting pair, making both bipartite on the sheet partition.
inline std::pair<SchreierSpec, SchreierSpec> double_cover_pair(const SchreierSpec& a, const SchreierSpec& b)
{
    if (a.n_vertices != b.n_vertices) throw Error(ErrorKind::dimension, "double cover pair on different vertex counts");
    return {double_cover_spec(a), double_cover_spec(b)};
}

namespace detail {

/// Perfect matching in a regular bipartite multigraph given as out-lists
/// (left i -> right j, repeated entries allowed). Kuhn's augmenting paths.
inline std::vector<Vertex> perfect_matching(const std::vector<std::vector<Vertex>>& adj)
{
    const std::size_t n = adj.size();
    constexpr Vertex none = UINT32_MAX;
    std::vector<Vertex> match_right(n, none);
    std::vector<std::uint32_t> visited(n, 0);
    std::uint32_t stamp = 0;

    // Iterative DFS to keep deep augmenting paths off the call stack.
    auto augment = [&](Vertex root) {
        ++stamp;
        std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
        std::vector<Vertex> via;   // right vertex used to enter each stack level above the root
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            if (idx == adj[u].size()) {
                stack.pop_back();
                if (!via.empty()) via.pop_back();
                continue;
            }
            const Vertex r = adj[u][idx++];
            if (visited[r] == stamp) continue;
            visited[r] = stamp;
            if (match_right[r] == none) {
                // Flip the alternating path: stack[i] gets matched to via[i] (via.back() for the top is r).
                via.push_back(r);
                for (std::size_t i = 0; i < stack.size(); ++i) match_right[via[i]] = stack[i].first;
                return true;
            }
            via.push_back(r);
            stack.emplace_back(match_right[r], 0);
        }
        return false;
    };

    for (Vertex u = 0; u < n; ++u)
        if (!augment(u)) throw Error(ErrorKind::invalid_spec, "regular bipartite multigraph without a perfect matching");

    std::vector<Vertex> match_left(n, none);
    for (Vertex r = 0; r < n; ++r) match_left[match_right[r]] = r;
    return match_left;
}

} // namespace detail

/// Symmetric Schreier structure on an even-degree regular graph: an Eulerian
/// orientation of each component gives a Δ/2-regular digraph, which splits into
/// Δ/2 permutations by repeated perfect matchings. Label 2i is the i-th
/// permutation and label 2i+1 its inverse.
inline SchreierSpec two_factorization(const LabeledGraph& g)
{
    const std::size_t n = g.n_vertices(), d = g.degree();
    if (d % 2 != 0) throw Error(ErrorKind::unsupported, "two-factorization needs even degree; odd degree is not supported");
    for (const Edge& e : g.edges())
        if (e.folded) throw Error(ErrorKind::unsupported, "two-factorization does not accept self-paired loops");

    // Eulerian orientation: closed trails from every vertex with unused edges.
    std::vector<std::vector<std::pair<std::uint32_t, Vertex>>> incident(n);   // (edge, far end)
    for (std::uint32_t i = 0; i < g.n_edges(); ++i) {
        const Edge& e = g.edge(i);
        incident[e.end[0]].emplace_back(i, e.end[1]);
        if (!e.is_loop()) incident[e.end[1]].emplace_back(i, e.end[0]);
    }
    std::vector<bool> used(g.n_edges(), false);
    std::vector<std::size_t> cursor(n, 0);
    std::vector<std::vector<Vertex>> out_lists(n);
    for (Vertex start = 0; start < n; ++start) {
        while (true) {
            while (cursor[start] < incident[start].size() && used[incident[start][cursor[start]].first]) ++cursor[start];
            if (cursor[start] == incident[start].size()) break;
            Vertex v = start;
            do {
                while (used[incident[v][cursor[v]].first]) ++cursor[v];
                const auto [edge, w] = incident[v][cursor[v]];
                used[edge] = true;
                out_lists[v].push_back(w);
                v = w;
            } while (v != start);
        }
    }

    SchreierSpec spec;
    spec.n_vertices = n;
    spec.partition = g.partition();
    for (std::size_t f = 0; f < d / 2; ++f) {
        const auto match = detail::perfect_matching(out_lists);
        for (Vertex v = 0; v < n; ++v) {
            auto it = std::find(out_lists[v].begin(), out_lists[v].end(), match[v]);
            out_lists[v].erase(it);
        }
        Permutation p(match);
        spec.perms.push_back(p);
        spec.perms.push_back(p.inverse());
        spec.pairing.push_back(static_cast<Label>(2 * f + 1));
        spec.pairing.push_back(static_cast<Label>(2 * f));
    }
    spec.validate();
    return spec;
}

/// Relations of M_A = [[A1, A2], [A2ᵀ, A3]] against M_B = diag(B1, B2).
struct BlockCommutationReport {
    bool a2b2_eq_b1a2 = false;
    bool a1b1_eq_b1a1 = false;
    bool a3b2_eq_b2a3 = false;
    bool mb_block_diagonal = false;
    bool commutes = false;   ///< M_A M_B = M_B M_A by direct multiplication
};

inline BlockCommutationReport block_commutation_report(const IntMatrix& ma, const IntMatrix& mb, std::size_t split)
{
    const std::size_t n = ma.rows();
    if (!ma.is_square() || !mb.is_square() || mb.rows() != n || split > n)
        throw Error(ErrorKind::dimension, "block matrices do not conform");
    const std::size_t m = n - split;
    const IntMatrix a1 = ma.block(0, 0, split, split), a2 = ma.block(0, split, split, m), a3 = ma.block(split, split, m, m);
    const IntMatrix b1 = mb.block(0, 0, split, split), b2 = mb.block(split, split, m, m);
    BlockCommutationReport rep;
    rep.a2b2_eq_b1a2 = a2 * b2 == b1 * a2;
    rep.a1b1_eq_b1a1 = a1 * b1 == b1 * a1;
    rep.a3b2_eq_b2a3 = a3 * b2 == b2 * a3;
    rep.mb_block_diagonal = mb.block(0, split, split, m).is_zero() && mb.block(split, 0, m, split).is_zero();
    rep.commutes = ma * mb == mb * ma;
    return rep;
}

inline IntMatrix permutation_matrix(const Permutation& p)
{
    IntMatrix m(p.size(), p.size());
    for (Vertex v = 0; v < p.size(); ++v) m(p(v), v) = 1;
    return m;
}

struct ConjugationResult {
    IntMatrix matrix;            ///< [[A1, A2], [A2ᵀ, P A3 Pᵀ]]
    bool a3_commutes_with_b2 = false;
    bool commutes_with_mb = false;
};

/// Replaces the A3 block by P A3 Pᵀ and re-checks commutation with M_B.
inline ConjugationResult conjugate_component(const IntMatrix& ma, const IntMatrix& mb, std::size_t split, const Permutation& p)
{
    const std::size_t n = ma.rows();
    if (!ma.is_square() || !mb.is_square() || mb.rows() != n || split > n || p.size() != n - split)
        throw Error(ErrorKind::dimension, "conjugation: permutation does not act on the A3 block");
    const std::size_t m = n - split;
    const IntMatrix pm = permutation_matrix(p);
    const IntMatrix a3 = pm * ma.block(split, split, m, m) * pm.transpose();
    ConjugationResult out;
    out.matrix = ma;
    out.matrix.set_block(split, split, a3);
    out.a3_commutes_with_b2 = a3 * mb.block(split, split, m, m) == mb.block(split, split, m, m) * a3;
    out.commutes_with_mb = out.matrix * mb == mb * out.matrix;
    return out;
}

} // namespace qtanner

#endif // QTANNER_GRAPH_HPP

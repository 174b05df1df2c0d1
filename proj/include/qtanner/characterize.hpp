#ifndef QTANNER_CHARACTERIZE_HPP
#define QTANNER_CHARACTERIZE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qtanner/code.hpp"
#include "qtanner/complex.hpp"
#include "qtanner/error.hpp"
#include "qtanner/gf2.hpp"
#include "qtanner/graph.hpp"

namespace qtanner {

/// Bijection from the edges of G0 to the edges of G1.
class PsiMap {
public:
    PsiMap() = default;
    explicit PsiMap(std::vector<std::uint32_t> image) : image_(std::move(image))
    {
        std::vector<bool> seen(image_.size(), false);
        for (auto e : image_) {
            if (e >= image_.size() || seen[e]) throw Error(ErrorKind::invalid_spec, "psi is not a bijection");
            seen[e] = true;
        }
    }

    static PsiMap identity(std::size_t n)
    {
        std::vector<std::uint32_t> image(n);
        std::iota(image.begin(), image.end(), std::uint32_t{0});
        return PsiMap(std::move(image));
    }

    std::size_t size() const { return image_.size(); }
    std::uint32_t operator()(std::uint32_t e) const { return image_[e]; }
    const std::vector<std::uint32_t>& image() const { return image_; }

    PsiMap inverse() const
    {
        std::vector<std::uint32_t> inv(image_.size());
        for (std::uint32_t e = 0; e < image_.size(); ++e) inv[image_[e]] = e;
        return PsiMap(std::move(inv));
    }

    PsiMap with_swapped(std::uint32_t e, std::uint32_t f) const
    {
        PsiMap out = *this;
        std::swap(out.image_[e], out.image_[f]);
        return out;
    }

private:
    std::vector<std::uint32_t> image_;
};

/// Δ x Δ grid of edge ids of one local view: entry (a, b) is the edge labelled (a, b).
using LocalViewMatrix = std::vector<std::vector<std::uint32_t>>;

inline std::size_t label_side(const LabeledGraph& g)
{
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(g.degree()))));
    if (d * d != g.degree() || d == 0)
        throw Error(ErrorKind::label_mismatch, "degree " + std::to_string(g.degree()) + " is not a positive square");
    return d;
}

inline LocalViewMatrix local_view_matrix(const LabeledGraph& g, Vertex v)
{
    const std::size_t d = label_side(g);
    LocalViewMatrix m(d, std::vector<std::uint32_t>(d));
    for (Label a = 0; a < d; ++a)
        for (Label b = 0; b < d; ++b) m[a][b] = g.out(v, pair_label(a, b, d)).edge;
    return m;
}

namespace detail {

inline std::size_t validate_pair(const LabeledGraph& g0, const LabeledGraph& g1, const PsiMap& psi)
{
    const std::size_t d = label_side(g0);
    if (label_side(g1) != d) throw Error(ErrorKind::label_mismatch, "G0 and G1 have different label sets");
    if (g0.n_vertices() != g1.n_vertices()) throw Error(ErrorKind::dimension, "G0 and G1 have different vertex counts");
    if (g0.n_edges() != g1.n_edges() || psi.size() != g0.n_edges())
        throw Error(ErrorKind::dimension, "psi does not match the edge counts");
    if (!g0.is_loop_free() || !g1.is_loop_free()) throw Error(ErrorKind::self_loop, "G0 and G1 must be loop-free");
    return d;
}

} // namespace detail

struct OverlapCell {
    Label a = 0, b = 0;

    friend bool operator==(const OverlapCell&, const OverlapCell&) = default;
    friend auto operator<=>(const OverlapCell&, const OverlapCell&) = default;
};

struct ConditionIIWitness {
    Vertex v = 0;                   ///< vertex of G0
    Vertex w = 0;                   ///< vertex of G1
    std::vector<OverlapCell> cells; ///< U as cells of E1(w)
};

struct ConditionIIResult {
    bool holds = true;
    std::optional<ConditionIIWitness> witness;
    std::size_t overlaps = 0;         ///< nonempty (v, w) overlaps examined
    std::size_t read_as_rows = 0;
    std::size_t read_as_columns = 0;
    std::size_t ambiguous = 0;        ///< both readings valid (e.g. Δ = 1); counted as rows
};

/// For all v in V0, w in V1: U = ψ(E0(v)) ∩ E1(w) is empty or consists of whole
/// rows (columns) of E1(w), each taken by ψ^{-1} to a row (column) of E0(v)
/// with the column (row) index preserved.
inline ConditionIIResult condition_ii_check(const LabeledGraph& g0, const LabeledGraph& g1, const PsiMap& psi)
{
    const std::size_t d = detail::validate_pair(g0, g1, psi);
    ConditionIIResult res;
    for (Vertex v = 0; v < g0.n_vertices(); ++v) {
        // w -> list of (cell in E1(w), cell in E0(v))
        std::map<Vertex, std::vector<std::pair<OverlapCell, OverlapCell>>> hits;
        for (Label l0 = 0; l0 < g0.degree(); ++l0) {
            const auto [a0, b0] = split_label(l0, d);
            const std::uint32_t f = psi(g0.out(v, l0).edge);
            const Edge& ef = g1.edge(f);
            for (int s = 0; s < 2; ++s) {
                const auto [a1, b1] = split_label(ef.label[s], d);
                hits[ef.end[s]].push_back({OverlapCell{a1, b1}, OverlapCell{a0, b0}});
            }
        }
        for (auto& [w, cells] : hits) {
            ++res.overlaps;
            std::sort(cells.begin(), cells.end());
            // Rows: U = R x [Δ]; row r of E1(w) maps to a single row of E0(v), b preserved.
            auto reads_as = [&](bool rows) {
                std::map<Label, std::vector<std::pair<OverlapCell, OverlapCell>>> lines;
                for (const auto& c : cells) lines[rows ? c.first.a : c.first.b].push_back(c);
                for (const auto& [key, line] : lines) {
                    if (line.size() != d) return false;
                    const Label image_line = rows ? line.front().second.a : line.front().second.b;
                    for (const auto& [cell1, cell0] : line) {
                        const Label along1 = rows ? cell1.b : cell1.a, along0 = rows ? cell0.b : cell0.a;
                        const Label across0 = rows ? cell0.a : cell0.b;
                        if (along1 != along0 || across0 != image_line) return false;
                    }
                }
                return true;
            };
            const bool as_rows = reads_as(true), as_cols = reads_as(false);
            if (as_rows && as_cols) ++res.ambiguous;
            if (as_rows) ++res.read_as_rows;
            else if (as_cols) ++res.read_as_columns;
            else if (res.holds) {
                res.holds = false;
                ConditionIIWitness wit{v, w, {}};
                for (const auto& c : cells) wit.cells.push_back(c.first);
                res.witness = std::move(wit);
            }
        }
    }
    return res;
}

struct SwappingResult {
    bool holds = true;
    std::optional<std::uint32_t> failing_edge;   ///< first G0 edge violating the condition
    std::size_t fixed_edges = 0;                 ///< edges with at least one label kept by ψ
    bool swap_form_everywhere = true;            ///< every edge maps (a,b),(a',b') to (a',b),(a,b')
};

/// For every edge of G0 whose labels ψ keeps, each kept label must share an
/// index with the edge's other label: one kept label needs a = a' or b = b',
/// two kept labels need a = a' and b = b'.
inline SwappingResult swapping_condition_check(const LabeledGraph& g0, const LabeledGraph& g1, const PsiMap& psi)
{
    const std::size_t d = detail::validate_pair(g0, g1, psi);
    SwappingResult res;
    for (std::uint32_t e = 0; e < g0.n_edges(); ++e) {
        std::array<Label, 2> l0 = g0.edge(e).label, l1 = g1.edge(psi(e)).label;
        std::sort(l0.begin(), l0.end());
        std::sort(l1.begin(), l1.end());
        std::vector<Label> common;
        std::set_intersection(l0.begin(), l0.end(), l1.begin(), l1.end(), std::back_inserter(common));
        const auto [a, b] = split_label(g0.edge(e).label[0], d);
        const auto [ap, bp] = split_label(g0.edge(e).label[1], d);
        const std::size_t shared = (a == ap ? 1 : 0) + (b == bp ? 1 : 0);
        if (!common.empty()) ++res.fixed_edges;
        if (!common.empty() && common.size() > shared && res.holds) {
            res.holds = false;
            res.failing_edge = e;
        }
        std::array<Label, 2> swapped{pair_label(ap, b, d), pair_label(a, bp, d)};
        std::sort(swapped.begin(), swapped.end());
        if (swapped != l1) res.swap_form_everywhere = false;
    }
    return res;
}

/// h0 = Tanner(G0, G_A ⊗ G_B), h1 = Tanner(G1, H_A ⊗ H_B) with column e of h1
/// taken from edge ψ(e), so both are indexed by the edges of G0.
inline CssCode general_qtanner_css(const LabeledGraph& g0, const LabeledGraph& g1, const PsiMap& psi, const LinearCode& ca,
                                   const LinearCode& cb)
{
    const std::size_t d = detail::validate_pair(g0, g1, psi);
    if (ca.n() != d || cb.n() != d) throw Error(ErrorKind::label_mismatch, "local codes must have length Δ = " + std::to_string(d));
    const BitMatrix h0 = tanner_parity(g0, kron(ca.generator(), cb.generator()));
    const BitMatrix raw1 = tanner_parity(g1, kron(ca.parity(), cb.parity()));
    BitMatrix h1(raw1.rows(), raw1.cols());
    for (std::size_t r = 0; r < raw1.rows(); ++r)
        for (std::uint32_t e = 0; e < psi.size(); ++e)
            if (raw1.get(r, psi(e))) h1.set(r, e);
    return make_css(h0, std::move(h1));
}

/// Edges at v with first label a all carry the same first label at their far
/// end, and likewise for second labels.
inline bool first_and_second_labels_locally_invertible(const LabeledGraph& g0)
{
    const std::size_t d = label_side(g0);
    for (Vertex v = 0; v < g0.n_vertices(); ++v) {
        std::vector<std::optional<Label>> far_a(d), far_b(d);
        for (Label l = 0; l < g0.degree(); ++l) {
            const HalfEdge h = g0.out(v, l);
            const auto [a, b] = split_label(l, d);
            const auto [fa, fb] = split_label(g0.label(g0.partner(h)), d);
            if (far_a[a] && *far_a[a] != fa) return false;
            if (far_b[b] && *far_b[b] != fb) return false;
            far_a[a] = fa;
            far_b[b] = fb;
        }
    }
    return true;
}

struct Reconstruction {
    LabeledGraph a;
    LabeledGraph b;
    Partition partition;   ///< vertex v of G0 is v, vertex w of G1 is |V0| + w
    SquareComplex complex;
};

/// Glues one square per ψ-pair of edges, with corners (v, w, w', v') where the
/// G1 edge is labelled (a', b) at w and (a, b') at w', identifies equal corners
/// and equally labelled parallel edges, and splits the result into G_A and G_B.
inline Reconstruction reconstruct_schreier_pair(const LabeledGraph& g0, const LabeledGraph& g1, const PsiMap& psi,
                                                bool enforce_swapping = true)
{
    const std::size_t d = detail::validate_pair(g0, g1, psi);
    const auto ii = condition_ii_check(g0, g1, psi);
    if (!ii.holds)
        throw Error(ErrorKind::condition_ii_failed, "condition (ii) fails at G0 vertex " + std::to_string(ii.witness->v) +
                                                        ", G1 vertex " + std::to_string(ii.witness->w));
    if (enforce_swapping) {
        const auto sw = swapping_condition_check(g0, g1, psi);
        if (!sw.holds)
            throw Error(ErrorKind::swapping_condition_failed, "swapping condition fails on G0 edge " + std::to_string(*sw.failing_edge));
    }
    const std::size_t n0 = g0.n_vertices();
    const std::size_t n = n0 + g1.n_vertices();

    // Corners are keyed by (id, side); side-1 corners are shifted by |V0|.
    using Key = std::tuple<Vertex, Vertex, Label, Label>;   // (side-0 end, side-1 end, label there, label there)
    std::map<Key, bool> a_edges, b_edges;
    for (std::uint32_t e = 0; e < g0.n_edges(); ++e) {
        const Edge& e0 = g0.edge(e);
        const Edge& e1 = g1.edge(psi(e));
        const Vertex v = e0.end[0], vp = e0.end[1];
        const auto [a, b] = split_label(e0.label[0], d);
        const auto [ap, bp] = split_label(e0.label[1], d);
        const Label want_w = pair_label(ap, b, d), want_wp = pair_label(a, bp, d);
        int w_side = -1;
        if (e1.label[0] == want_w && e1.label[1] == want_wp) w_side = 0;
        else if (e1.label[1] == want_w && e1.label[0] == want_wp) w_side = 1;
        if (w_side < 0)
            throw Error(ErrorKind::swapping_condition_failed, "G1 edge " + std::to_string(psi(e)) +
                                                                  " is not labelled in swap form relative to G0 edge " + std::to_string(e));
        const Vertex w = static_cast<Vertex>(n0 + e1.end[w_side]);
        const Vertex wp = static_cast<Vertex>(n0 + e1.end[1 - w_side]);
        a_edges[{v, w, a, ap}] = true;
        a_edges[{vp, wp, ap, a}] = true;
        b_edges[{v, wp, b, bp}] = true;
        b_edges[{vp, w, bp, b}] = true;
    }
    auto to_graph = [&](const std::map<Key, bool>& keyed, const char* name) {
        std::vector<Edge> edges;
        for (const auto& [k, unused] : keyed) {
            (void)unused;
            const auto& [x, y, lx, ly] = k;
            edges.push_back(Edge{{x, y}, {lx, ly}, false});
        }
        Partition p(n, 0);
        std::fill(p.begin() + static_cast<std::ptrdiff_t>(n0), p.end(), 1);
        try {
            return LabeledGraph(n, d, canonical_edge_order(std::move(edges)), std::move(p));
        } catch (const Error& err) {
            throw Error(ErrorKind::swapping_condition_failed, std::string("reconstructed ") + name + " is not well-labelled: " + err.what());
        }
    };
    Reconstruction out;
    out.a = to_graph(a_edges, "G_A");
    out.b = to_graph(b_edges, "G_B");
    out.partition = *out.a.partition();
    out.complex = build_complex(out.a, out.b, out.partition);
    return out;
}

/// Order-independent form of (G0, G1, ψ): one entry per ψ-pair of edges.
using EdgeKey = std::tuple<Vertex, Vertex, Label, Label>;
inline EdgeKey edge_key(const Edge& e)
{
    if (std::tie(e.end[0], e.label[0]) <= std::tie(e.end[1], e.label[1])) return {e.end[0], e.end[1], e.label[0], e.label[1]};
    return {e.end[1], e.end[0], e.label[1], e.label[0]};
}

inline std::vector<std::pair<EdgeKey, EdgeKey>> canonical_pairing(const LabeledGraph& g0, const LabeledGraph& g1, const PsiMap& psi)
{
    std::vector<std::pair<EdgeKey, EdgeKey>> out;
    out.reserve(g0.n_edges());
    for (std::uint32_t e = 0; e < g0.n_edges(); ++e) out.emplace_back(edge_key(g0.edge(e)), edge_key(g1.edge(psi(e))));
    std::sort(out.begin(), out.end());
    return out;
}

/// Rebuilds the square graphs from a reconstruction and compares with the input.
inline bool round_trip_matches(const LabeledGraph& g0, const LabeledGraph& g1, const PsiMap& psi, const Reconstruction& r)
{
    const auto [h0, h1] = square_graphs(r.complex);
    if (h0.graph.n_vertices() != g0.n_vertices() || h1.graph.n_vertices() != g1.n_vertices()) return false;
    return canonical_pairing(g0, g1, psi) == canonical_pairing(h0.graph, h1.graph, PsiMap::identity(h0.n_edges()));
}

struct RedExample {
    LabeledGraph graph;   ///< used as both G0 and G1
    PsiMap psi;
    std::size_t delta = 2;
};

/// 3 vertices; each arrow u -> u+1 appears twice (i = 0, 1) with label
/// (a0, b_i) at u and (a1, b_i) at u+1.
inline RedExample example_red_nonempty()
{
    constexpr std::size_t d = 2;
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 3; ++u)
        for (Label i = 0; i < 2; ++i)
            edges.push_back(Edge{{u, static_cast<Vertex>((u + 1) % 3)}, {pair_label(0, i, d), pair_label(1, i, d)}, false});
    LabeledGraph g(3, d * d, canonical_edge_order(std::move(edges)));
    return RedExample{g, PsiMap::identity(g.n_edges()), d};
}

/// All single-row parity checks of length Δ (2^Δ of them, the zero row is F_2^Δ).
inline std::vector<LinearCode> single_row_local_codes(std::size_t delta)
{
    std::vector<LinearCode> out;
    for (std::uint32_t mask = 0; mask < (1U << delta); ++mask) {
        BitMatrix h(1, delta);
        for (std::size_t i = 0; i < delta; ++i)
            if ((mask >> i) & 1U) h.set(0, i);
        out.emplace_back(std::move(h));
    }
    return out;
}

struct LocalCodeSweep {
    std::size_t pairs = 0;
    std::size_t violations = 0;
};

/// Runs general_qtanner_css over every pair of single-row local parity checks.
inline LocalCodeSweep local_code_sweep(const LabeledGraph& g0, const LabeledGraph& g1, const PsiMap& psi)
{
    const std::size_t d = label_side(g0);
    const auto codes = single_row_local_codes(d);
    LocalCodeSweep s;
    for (const auto& ca : codes)
        for (const auto& cb : codes) {
            ++s.pairs;
            if (!general_qtanner_css(g0, g1, psi, ca, cb).orthogonal) ++s.violations;
        }
    return s;
}

} // namespace qtanner

#endif // QTANNER_CHARACTERIZE_HPP

#ifndef QTANNER_CODE_HPP
#define QTANNER_CODE_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qtanner/complex.hpp"
#include "qtanner/error.hpp"
#include "qtanner/gf2.hpp"
#include "qtanner/graph.hpp"
#include "qtanner/group.hpp"

namespace qtanner {

/// Classical binary code given by a (possibly redundant) parity-check matrix.
class LinearCode {
public:
    LinearCode() = default;
    explicit LinearCode(BitMatrix parity)
        : parity_(std::move(parity)), generator_(nullspace_basis(parity_))
    {
    }

    static LinearCode from_generator(const BitMatrix& generator) { return LinearCode(nullspace_basis(generator)); }

    /// [n, 1, n]
    static LinearCode repetition(std::size_t n)
    {
        BitMatrix h(n == 0 ? 0 : n - 1, n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h.set(i, i);
            h.set(i, i + 1);
        }
        return LinearCode(std::move(h));
    }

    /// [n, n-1, 2]
    static LinearCode single_parity_check(std::size_t n)
    {
        BitMatrix h(n == 0 ? 0 : 1, n);
        for (std::size_t i = 0; i < n; ++i) h.set(0, i);
        return LinearCode(std::move(h));
    }

    /// F_2^n
    static LinearCode full(std::size_t n) { return LinearCode(BitMatrix(0, n)); }

    std::size_t n() const { return parity_.cols(); }
    std::size_t k() const { return generator_.rows(); }
    const BitMatrix& parity() const { return parity_; }
    const BitMatrix& generator() const { return generator_; }

    /// Minimum nonzero weight by enumeration; nullopt for the zero code.
    std::optional<std::size_t> distance() const
    {
        if (k() > 30) throw Error(ErrorKind::budget_exceeded, "code dimension too large for exhaustive distance");
        std::optional<std::size_t> best;
        BitVector c(n());
        const std::uint64_t total = std::uint64_t{1} << k();
        for (std::uint64_t i = 1; i < total; ++i) {
            c ^= generator_.row(static_cast<std::size_t>(std::countr_zero(i)));
            const std::size_t w = c.weight();
            if (!best || w < *best) best = w;
        }
        return best;
    }

private:
    BitMatrix parity_;
    BitMatrix generator_;
};

/// The dual code: its parity-check matrix is a generator matrix of c.
inline LinearCode dual_parity(const LinearCode& c) { return LinearCode(c.generator()); }

struct TensorParity {
    BitMatrix tensor;        ///< checks C_A ⊗ C_B: rows of H_A ⊗ I stacked over I ⊗ H_B
    BitMatrix dual_tensor;   ///< checks (C_A^⊥ ⊗ C_B^⊥)^⊥ = C_A ⊗ F + F ⊗ C_B: H_A ⊗ H_B
};

/// Codewords are n_A x n_B matrices flattened row by row.
inline TensorParity tensor_parity(const LinearCode& ca, const LinearCode& cb)
{
    return TensorParity{kron(ca.parity(), BitMatrix::identity(cb.n())).vstack(kron(BitMatrix::identity(ca.n()), cb.parity())),
                        kron(ca.parity(), cb.parity())};
}

/// Stacks one block per vertex: row r of block j has local_parity(r, l) in the
/// column of the edge labelled l in the local view of j.
inline BitMatrix tanner_parity(const LabeledGraph& g, const BitMatrix& local_parity)
{
    if (local_parity.cols() != g.degree())
        throw Error(ErrorKind::label_mismatch, "local code has length " + std::to_string(local_parity.cols()) +
                                                   " but the graph has degree " + std::to_string(g.degree()));
    if (!g.is_loop_free()) throw Error(ErrorKind::self_loop, "Tanner codes need a graph without self-loops");
    const std::size_t r = local_parity.rows();
    BitMatrix h(g.n_vertices() * r, g.n_edges());
    for (Vertex j = 0; j < g.n_vertices(); ++j)
        for (Label l = 0; l < g.degree(); ++l) {
            const std::size_t t = g.out(j, l).edge;
            for (std::size_t row = 0; row < r; ++row)
                if (local_parity.get(row, l)) h.set(j * r + row, t);
        }
    return h;
}

struct WeightSummary {
    std::size_t max_row = 0, max_col = 0;
    double mean_row = 0, mean_col = 0;
};

inline WeightSummary weight_summary(const BitMatrix& h)
{
    WeightSummary s;
    std::size_t total = 0;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const std::size_t w = h.row_weight(r);
        s.max_row = std::max(s.max_row, w);
        total += w;
    }
    for (std::size_t c = 0; c < h.cols(); ++c) s.max_col = std::max(s.max_col, h.col_weight(c));
    if (h.rows() > 0) s.mean_row = static_cast<double>(total) / static_cast<double>(h.rows());
    if (h.cols() > 0) s.mean_col = static_cast<double>(total) / static_cast<double>(h.cols());
    return s;
}

struct LdpcReport {
    WeightSummary h0, h1;
};

/// Pair of classical codes C0 = ker h0 and C1 = ker h1.
struct CssCode {
    std::size_t n = 0;
    BitMatrix h0, h1;
    std::size_t rank_h0 = 0, rank_h1 = 0;
    bool orthogonal = false;   ///< h0 h1^T = 0
    std::optional<std::size_t> dx, dz;

    std::size_t dim_c0() const { return n - rank_h0; }
    std::size_t dim_c1() const { return n - rank_h1; }
};

inline CssCode make_css(BitMatrix h0, BitMatrix h1)
{
    if (h0.cols() != h1.cols()) throw Error(ErrorKind::dimension, "h0 and h1 have different lengths");
    CssCode c;
    c.n = h0.cols();
    c.orthogonal = multiply_transpose(h0, h1).is_zero();
    c.rank_h0 = rank(h0);
    c.rank_h1 = rank(h1);
    c.h0 = std::move(h0);
    c.h1 = std::move(h1);
    return c;
}

/// dim C0 + dim C1 - n.
inline std::size_t css_dimension(const CssCode& c)
{
    if (!c.orthogonal) throw Error(ErrorKind::css_violation, "h0 h1^T is nonzero");
    return c.dim_c0() + c.dim_c1() - c.n;
}

inline LdpcReport ldpc_report(const CssCode& c) { return LdpcReport{weight_summary(c.h0), weight_summary(c.h1)}; }

/// C0 = Tan(G□0, (C_A ⊗ C_B)^⊥) checked by G_A ⊗ G_B; C1 = Tan(G□1,
/// (C_A^⊥ ⊗ C_B^⊥)^⊥) checked by H_A ⊗ H_B. Column t is square t.
inline CssCode css_from_square_graphs(const LabeledGraph& g0, const LabeledGraph& g1, const LinearCode& ca, const LinearCode& cb)
{
    const std::size_t d2 = ca.n() * cb.n();
    if (g0.degree() != d2 || g1.degree() != d2)
        throw Error(ErrorKind::label_mismatch, "local code lengths do not match the square graph degree");
    if (g0.n_edges() != g1.n_edges()) throw Error(ErrorKind::dimension, "square graphs have different edge counts");
    return make_css(tanner_parity(g0, kron(ca.generator(), cb.generator())), tanner_parity(g1, kron(ca.parity(), cb.parity())));
}

inline CssCode css_from_complex(const SquareComplex& x, const LinearCode& ca, const LinearCode& cb)
{
    if (ca.n() != x.delta || cb.n() != x.delta)
        throw Error(ErrorKind::label_mismatch, "local codes must have length Δ = " + std::to_string(x.delta));
    const auto [g0, g1] = square_graphs(x);
    return css_from_square_graphs(g0.graph, g1.graph, ca, cb);
}

struct DistanceResult {
    std::optional<std::size_t> dx, dz;   ///< nullopt: no logical operator of that type
    bool exact = true;
    std::string note;
};

namespace detail {

/// min |c| over c in ker(h_code) \ rowspace(h_other), by Gray-code enumeration
/// of the kernel, split into 2^s shards by the top basis coefficients.
inline std::optional<std::size_t> logical_min_weight(const BitMatrix& h_code, const BitMatrix& h_other, unsigned threads)
{
    const BitMatrix basis = nullspace_basis(h_code);
    const std::size_t k = basis.rows(), n = basis.cols();
    if (k == 0) return std::nullopt;
    const RowSpace stabilizers(h_other);

    unsigned shard_bits = 0;
    while ((1U << (shard_bits + 1)) <= std::max(1U, threads) && shard_bits + 1 <= k && shard_bits < 16) ++shard_bits;
    const std::size_t low = k - shard_bits;
    const std::size_t shards = std::size_t{1} << shard_bits;
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(shards, none);

    auto run = [&](std::size_t shard) {
        BitVector c(n);
        for (std::size_t bit = 0; bit < shard_bits; ++bit)
            if ((shard >> bit) & 1U) c ^= basis.row(low + bit);
        std::size_t local = none;
        auto consider = [&]() {
            if (c.is_zero()) return;
            const std::size_t w = c.weight();
            if (w < local && !stabilizers.contains(c)) local = w;
        };
        consider();
        const std::uint64_t total = std::uint64_t{1} << low;
        for (std::uint64_t i = 1; i < total; ++i) {
            c ^= basis.row(static_cast<std::size_t>(std::countr_zero(i)));
            consider();
        }
        best[shard] = local;
    };

    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(shards)));
    if (workers == 1) {
        for (std::size_t s = 0; s < shards; ++s) run(s);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t s = t; s < shards; s += workers) run(s);
            });
        for (auto& th : pool) th.join();
    }
    const std::size_t m = *std::min_element(best.begin(), best.end());
    if (m == none) return std::nullopt;
    return m;
}

} // namespace detail

inline constexpr std::size_t default_distance_cap = 24;

/// Exact dX = min over C0 \ C1^⊥ and dZ = min over C1 \ C0^⊥. Refuses to run when
/// either code dimension exceeds `cap` unless `force` is set.
inline DistanceResult css_distances(const CssCode& c, std::size_t cap = default_distance_cap, unsigned threads = 1, bool force = false)
{
    if (!c.orthogonal) throw Error(ErrorKind::css_violation, "h0 h1^T is nonzero");
    if (!force && (c.dim_c0() > cap || c.dim_c1() > cap))
        throw Error(ErrorKind::budget_exceeded, "code dimensions " + std::to_string(c.dim_c0()) + "/" + std::to_string(c.dim_c1()) +
                                                    " exceed the enumeration cap " + std::to_string(cap));
    if (c.dim_c0() > 62 || c.dim_c1() > 62) throw Error(ErrorKind::budget_exceeded, "code dimension beyond enumeration range");
    DistanceResult r;
    r.dx = detail::logical_min_weight(c.h0, c.h1, threads);
    r.dz = detail::logical_min_weight(c.h1, c.h0, threads);
    if (!r.dx || !r.dz) r.note = "no logical operators";
    return r;
}

/// Randomized information-set probe: upper bounds on dX and dZ, never exact.
inline DistanceResult css_distance_bounds(const CssCode& c, std::size_t iterations, std::uint64_t seed)
{
    if (!c.orthogonal) throw Error(ErrorKind::css_violation, "h0 h1^T is nonzero");
    std::mt19937_64 rng(seed);
    auto probe = [&](const BitMatrix& h_code, const BitMatrix& h_other) -> std::optional<std::size_t> {
        const BitMatrix g = nullspace_basis(h_code);
        if (g.rows() == 0) return std::nullopt;
        const RowSpace stabilizers(h_other);
        const std::size_t n = g.cols();
        std::optional<std::size_t> best;
        auto consider = [&](const BitVector& v) {
            if (v.is_zero() || stabilizers.contains(v)) return;
            const std::size_t w = v.weight();
            if (!best || w < *best) best = w;
        };
        std::vector<std::size_t> perm(n);
        for (std::size_t it = 0; it < iterations; ++it) {
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            std::shuffle(perm.begin(), perm.end(), rng);
            BitMatrix permuted(g.rows(), n);
            for (std::size_t r = 0; r < g.rows(); ++r)
                for (std::size_t col = 0; col < n; ++col)
                    if (g.get(r, perm[col])) permuted.set(r, col);
            const Echelon e = row_reduce(permuted);
            std::vector<BitVector> rows;
            for (std::size_t r = 0; r < e.rank(); ++r) {
                BitVector v(n);
                for (std::size_t col = 0; col < n; ++col)
                    if (e.reduced.get(r, col)) v.set(perm[col]);
                rows.push_back(std::move(v));
            }
            for (std::size_t i = 0; i < rows.size(); ++i) {
                consider(rows[i]);
                for (std::size_t j = i + 1; j < rows.size(); ++j) {
                    BitVector s = rows[i];
                    s ^= rows[j];
                    consider(s);
                }
            }
        }
        return best;
    };
    DistanceResult r;
    r.exact = false;
    r.note = "bound, not exact";
    r.dx = probe(c.h0, c.h1);
    r.dz = probe(c.h1, c.h0);
    return r;
}

/// Cay_l(G, A) and Cay_r(G, B), both double covered, then the square complex and its CSS code.
inline CssCode cayley_quantum_tanner(const GroupTable& g, const std::vector<GroupTable::Element>& a_labels,
                                     const std::vector<GroupTable::Element>& b_labels, const LinearCode& ca, const LinearCode& cb)
{
    const SchreierSpec a = double_cover_spec(cayley_graph(g, a_labels, CayleySide::left));
    const SchreierSpec b = double_cover_spec(cayley_graph(g, b_labels, CayleySide::right));
    const SquareComplex x = build_complex(schreier_graph(a), schreier_graph(b), *a.partition);
    return css_from_complex(x, ca, cb);
}

} // namespace qtanner

#endif // QTANNER_CODE_HPP

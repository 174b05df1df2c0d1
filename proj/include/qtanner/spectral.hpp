#ifndef QTANNER_SPECTRAL_HPP
#define QTANNER_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtanner/error.hpp"
#include "qtanner/graph.hpp"
#include "qtanner/int_matrix.hpp"

namespace qtanner {

/// Off-diagonal Frobenius norm at which Jacobi iteration stops, relative to ‖m‖.
inline constexpr double jacobi_relative_tolerance = 1e-12;
/// Eigenvalues within this distance of ±Δ count as ±Δ.
inline constexpr double degree_match_tolerance = 1e-6;

struct Spectrum {
    std::vector<double> eigenvalues;   ///< descending
    double tolerance = 1e-9;

    std::size_t size() const { return eigenvalues.size(); }
    double sum() const { return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0); }
};

struct Eigensystem {
    std::vector<double> values;                ///< descending
    std::vector<std::vector<double>> vectors;  ///< vectors[i] belongs to values[i], unit length
};

namespace detail {

using Dense = std::vector<double>;

inline double frobenius(const Dense& a) { return std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0)); }

inline double off_diagonal_norm(const Dense& a, std::size_t n)
{
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
}

inline Eigensystem jacobi(Dense a, std::size_t n, bool want_vectors)
{
    Dense v;
    if (want_vectors) {
        v.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }
    const double target = jacobi_relative_tolerance * std::max(frobenius(a), 1e-300);
    constexpr int max_sweeps = 100;
    int sweep = 0;
    while (off_diagonal_norm(a, n) >= target) {
        if (++sweep > max_sweeps) throw Error(ErrorKind::domain, "Jacobi iteration did not converge");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = a[p * n + k] = c * akp - s * akq;
                    a[k * n + q] = a[q * n + k] = s * akp + c * akq;
                }
                if (want_vectors)
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v[k * n + p], vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
            }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] > a[y * n + y]; });
    Eigensystem out;
    for (std::size_t i : order) {
        out.values.push_back(a[i * n + i]);
        if (want_vectors) {
            std::vector<double> col(n);
            for (std::size_t k = 0; k < n; ++k) col[k] = v[k * n + i];
            out.vectors.push_back(std::move(col));
        }
    }
    return out;
}

inline Dense to_dense(const IntMatrix& m)
{
    Dense d(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) d[r * m.cols() + c] = static_cast<double>(m(r, c));
    return d;
}

inline void require_symmetric(const IntMatrix& m)
{
    if (!m.is_symmetric()) throw Error(ErrorKind::domain, "eigenvalues requested for a non-symmetric matrix");
}

inline std::vector<double> apply(const IntMatrix& m, const std::vector<double>& x)
{
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) y[r] += static_cast<double>(m(r, c)) * x[c];
    return y;
}

inline double dot(const std::vector<double>& x, const std::vector<double>& y)
{
    return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

/// Components and a 2-colouring of the nonzero pattern of a symmetric matrix.
struct PatternShape {
    std::size_t components = 0;
    bool bipartite = true;
};

inline PatternShape pattern_shape(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    std::vector<int> colour(n, -1);
    PatternShape shape;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (colour[s] != -1) continue;
        ++shape.components;
        colour[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w) {
                if (m(v, w) == 0) continue;
                if (colour[w] == -1) {
                    colour[w] = 1 - colour[v];
                    stack.push_back(w);
                } else if (colour[w] == colour[v]) {
                    shape.bipartite = false;
                }
            }
        }
    }
    return shape;
}

/// max |λ| after removing one +d and, for bipartite shapes, one -d.
inline double nontrivial_radius(std::vector<double> values, double d, bool bipartite)
{
    auto remove_near = [&](double target) {
        auto it = std::min_element(values.begin(), values.end(),
                                   [&](double x, double y) { return std::abs(x - target) < std::abs(y - target); });
        if (it == values.end() || std::abs(*it - target) > degree_match_tolerance)
            throw Error(ErrorKind::domain, "regular graph spectrum lacks the expected eigenvalue " + std::to_string(target));
        values.erase(it);
    };
    remove_near(d);
    if (bipartite) remove_near(-d);
    double r = 0;
    for (double x : values) r = std::max(r, std::abs(x));
    return r;
}

} // namespace detail

inline Spectrum eigenvalues_symmetric(const IntMatrix& m)
{
    detail::require_symmetric(m);
    return Spectrum{detail::jacobi(detail::to_dense(m), m.rows(), false).values, 1e-9};
}

inline Eigensystem eigensystem_symmetric(const std::vector<double>& dense, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dense[i * n + j] != dense[j * n + i]) throw Error(ErrorKind::domain, "eigensystem of a non-symmetric matrix");
    return detail::jacobi(dense, n, true);
}

/// λ of a d-regular symmetric nonnegative matrix, read as a weighted graph.
inline double lambda_of_matrix(const IntMatrix& m, double degree)
{
    detail::require_symmetric(m);
    if (m.rows() <= 2) throw Error(ErrorKind::domain, "lambda is only defined for more than two vertices");
    const auto shape = detail::pattern_shape(m);
    if (shape.components > 1) return degree;
    return detail::nontrivial_radius(eigenvalues_symmetric(m).eigenvalues, degree, shape.bipartite);
}

/// max{|λ_i| : λ_i ≠ ±Δ} for connected graphs, Δ for disconnected ones.
inline double lambda(const LabeledGraph& g)
{
    if (g.n_vertices() <= 2) throw Error(ErrorKind::domain, "lambda is only defined for more than two vertices");
    const double d = static_cast<double>(g.degree());
    if (g.component_count() > 1) return d;
    return detail::nontrivial_radius(eigenvalues_symmetric(g.adjacency()).eigenvalues, d, g.is_bipartite());
}

inline double ramanujan_bound(std::size_t degree) { return 2.0 * std::sqrt(static_cast<double>(degree) - 1.0); }

inline bool is_ramanujan(const LabeledGraph& g, double tolerance = degree_match_tolerance)
{
    return lambda(g) <= ramanujan_bound(g.degree()) + tolerance;
}

/// Adjacency of the subgraph induced on `vertices` (in the given order).
inline IntMatrix induced_adjacency(const IntMatrix& m, const std::vector<std::size_t>& vertices)
{
    IntMatrix out(vertices.size(), vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = 0; j < vertices.size(); ++j) out(i, j) = m(vertices[i], vertices[j]);
    return out;
}

struct ProductSpectrumReport {
    double product_residual = 0;      ///< eig(M_A M_B) vs sorted αβ
    double sum_residual = 0;          ///< eig(M_A + M_B) vs sorted α+β
    double eigenvector_residual = 0;  ///< max ‖M v − α v‖ over the common basis
    std::vector<std::pair<double, double>> pairs;   ///< (α, β) per common eigenvector
    bool bound_applicable = false;
    std::optional<double> lambda_square;   ///< λ of the M_A M_B graph, when defined
    double bound = 0;                      ///< 4(Δ-1)
    std::optional<bool> bound_holds;
    std::optional<double> split_eigenvalue;   ///< α of (u, -u) when G_B has two components
    std::vector<std::string> hypotheses_failed;

    bool pairing_ok(double tol = 1e-8) const
    {
        return product_residual < tol && sum_residual < tol && eigenvector_residual < tol;
    }
};

/// Simultaneous diagonalization of commuting adjacency matrices: eigenvalues of
/// M_A M_B and M_A + M_B are the products and sums over a common eigenbasis.
/// Also evaluates λ(G□) ≤ 4(Δ-1) when its Ramanujan hypotheses hold.
inline ProductSpectrumReport product_spectrum_check(const LabeledGraph& a, const LabeledGraph& b)
{
    if (a.n_vertices() != b.n_vertices()) throw Error(ErrorKind::dimension, "product spectrum on different vertex counts");
    const IntMatrix ma = a.adjacency(), mb = b.adjacency();
    const IntMatrix prod = ma * mb;
    if (!(prod == mb * ma)) throw Error(ErrorKind::not_commuting, "adjacency matrices do not commute");
    const std::size_t n = ma.rows();

    // A generic combination separates joint eigenspaces.
    const double c = std::sqrt(2.0) / 3.0 + 0.0123456789;
    std::vector<double> combo(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) combo[i * n + j] = static_cast<double>(ma(i, j)) + c * static_cast<double>(mb(i, j));
    const auto sys = eigensystem_symmetric(combo, n);

    ProductSpectrumReport rep;
    std::vector<double> products, sums;
    for (const auto& v : sys.vectors) {
        const auto av = detail::apply(ma, v), bv = detail::apply(mb, v);
        const double alpha = detail::dot(v, av), beta = detail::dot(v, bv);
        double ra = 0, rb = 0;
        for (std::size_t k = 0; k < n; ++k) {
            ra += (av[k] - alpha * v[k]) * (av[k] - alpha * v[k]);
            rb += (bv[k] - beta * v[k]) * (bv[k] - beta * v[k]);
        }
        rep.eigenvector_residual = std::max({rep.eigenvector_residual, std::sqrt(ra), std::sqrt(rb)});
        rep.pairs.emplace_back(alpha, beta);
        products.push_back(alpha * beta);
        sums.push_back(alpha + beta);
    }
    auto compare = [](std::vector<double> predicted, const std::vector<double>& actual) {
        std::sort(predicted.begin(), predicted.end(), std::greater<>());
        double r = 0;
        for (std::size_t i = 0; i < predicted.size(); ++i) r = std::max(r, std::abs(predicted[i] - actual[i]));
        return r;
    };
    rep.product_residual = compare(products, eigenvalues_symmetric(prod).eigenvalues);
    rep.sum_residual = compare(sums, eigenvalues_symmetric(ma + mb).eigenvalues);

    // Hypotheses of the 4(Δ-1) bound.
    const std::size_t delta = a.degree();
    rep.bound = 4.0 * (static_cast<double>(delta) - 1.0);
    auto fail = [&](std::string why) { rep.hypotheses_failed.push_back(std::move(why)); };
    if (a.degree() != b.degree()) fail("degrees differ");
    if (n <= 2) fail("too few vertices");
    if (rep.hypotheses_failed.empty()) {
        if (a.component_count() != 1) fail("G_A is disconnected");
        else if (a.is_bipartite()) fail("G_A is bipartite");
        else if (!is_ramanujan(a)) fail("G_A is not Ramanujan");

        const auto comp = b.components();
        const std::size_t nc = b.component_count();
        if (nc > 2) fail("G_B has more than two components");
        for (std::uint32_t k = 0; k < nc && nc <= 2; ++k) {
            std::vector<std::size_t> verts;
            for (std::size_t v = 0; v < n; ++v)
                if (comp[v] == k) verts.push_back(v);
            const IntMatrix sub = induced_adjacency(mb, verts);
            if (verts.size() <= 2) {
                fail("a component of G_B has at most two vertices");
                continue;
            }
            if (detail::pattern_shape(sub).bipartite) fail("a component of G_B is bipartite");
            else if (lambda_of_matrix(sub, static_cast<double>(delta)) > ramanujan_bound(delta) + degree_match_tolerance)
                fail("a component of G_B is not Ramanujan");
        }
        if (nc == 2) {
            std::vector<double> split(n);
            for (std::size_t v = 0; v < n; ++v) split[v] = comp[v] == 0 ? 1.0 : -1.0;
            const auto image = detail::apply(ma, split);
            const double alpha = detail::dot(split, image) / static_cast<double>(n);
            double off = 0;
            for (std::size_t v = 0; v < n; ++v) off = std::max(off, std::abs(image[v] - alpha * split[v]));
            if (off > degree_match_tolerance) fail("(u,-u) is not an eigenvector of M_A");
            else {
                rep.split_eigenvalue = alpha;
                if (std::abs(alpha) > degree_match_tolerance) fail("(u,-u) has nonzero M_A eigenvalue");
            }
        }
    }
    const double d2 = static_cast<double>(delta * delta);
    if (a.degree() == b.degree() && n > 2) rep.lambda_square = lambda_of_matrix(prod, d2);
    rep.bound_applicable = rep.hypotheses_failed.empty();
    if (rep.bound_applicable && rep.lambda_square) rep.bound_holds = *rep.lambda_square <= rep.bound + degree_match_tolerance;
    return rep;
}

} // namespace qtanner

#endif // QTANNER_SPECTRAL_HPP

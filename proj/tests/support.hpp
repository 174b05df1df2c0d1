#ifndef QTANNER_TESTS_SUPPORT_HPP
#define QTANNER_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qtanner/qtanner.hpp"

namespace qtanner::testing {

using Dense = std::vector<std::vector<int>>;

inline Dense to_dense(const BitMatrix& m)
{
    Dense d(m.rows(), std::vector<int>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) d[r][c] = m.get(r, c) ? 1 : 0;
    return d;
}

/// Plain Gauss-Jordan on int rows, no bit packing.
inline std::size_t oracle_rank(Dense m)
{
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != rank && m[r][c])
                for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
        ++rank;
    }
    return rank;
}

/// Every GF(2) combination of the rows, as 0/1 strings.
inline std::set<std::string> oracle_span(const BitMatrix& m)
{
    std::set<std::string> out;
    const std::size_t r = m.rows();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        std::string v(m.cols(), '0');
        for (std::size_t i = 0; i < r; ++i)
            if ((mask >> i) & 1U)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (m.get(i, c)) v[c] = v[c] == '0' ? '1' : '0';
        out.insert(v);
    }
    return out;
}

/// All x in F_2^n with m x^T = 0, by brute force.
inline std::set<std::string> oracle_kernel(const BitMatrix& m)
{
    std::set<std::string> out;
    const std::size_t n = m.cols();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool ok = true;
        for (std::size_t r = 0; r < m.rows() && ok; ++r) {
            int s = 0;
            for (std::size_t c = 0; c < n; ++c) s ^= (m.get(r, c) && ((mask >> c) & 1U)) ? 1 : 0;
            ok = s == 0;
        }
        if (!ok) continue;
        std::string v(n, '0');
        for (std::size_t c = 0; c < n; ++c)
            if ((mask >> c) & 1U) v[c] = '1';
        out.insert(v);
    }
    return out;
}

inline BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density = 0.5)
{
    std::bernoulli_distribution bit(density);
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (bit(rng)) m.set(r, c);
    return m;
}

/// Minimum weight over ker(h_code) minus rowspace(h_other), enumerating
/// coefficient vectors from the top index down.
inline std::optional<std::size_t> oracle_logical_min_weight(const BitMatrix& h_code, const BitMatrix& h_other)
{
    const BitMatrix basis = nullspace_basis(h_code);
    const std::set<std::string> stabilizers = oracle_span(h_other);
    std::optional<std::size_t> best;
    const std::size_t k = basis.rows();
    for (std::uint64_t mask = (std::uint64_t{1} << k) - 1; mask > 0; --mask) {
        std::string v(basis.cols(), '0');
        std::size_t w = 0;
        for (std::size_t i = 0; i < k; ++i)
            if ((mask >> i) & 1U)
                for (std::size_t c = 0; c < basis.cols(); ++c)
                    if (basis.get(i, c)) v[c] = v[c] == '0' ? '1' : '0';
        w = static_cast<std::size_t>(std::count(v.begin(), v.end(), '1'));
        if (stabilizers.count(v)) continue;
        if (!best || w < *best) best = w;
    }
    return best;
}

/// Every linear code of length n (n <= 4), by closed subsets of F_2^n.
inline std::vector<LinearCode> all_codes(std::size_t n)
{
    std::vector<LinearCode> out;
    const std::uint32_t points = 1U << n;
    for (std::uint64_t set = 1; set < (std::uint64_t{1} << points); set += 2) {
        bool closed = true;
        for (std::uint32_t x = 0; x < points && closed; ++x)
            for (std::uint32_t y = x + 1; y < points && closed; ++y)
                if (((set >> x) & 1U) && ((set >> y) & 1U) && !((set >> (x ^ y)) & 1U)) closed = false;
        if (!closed) continue;
        std::vector<std::string> rows;
        for (std::uint32_t x = 1; x < points; ++x)
            if ((set >> x) & 1U) {
                std::string r(n, '0');
                for (std::size_t i = 0; i < n; ++i)
                    if ((x >> i) & 1U) r[i] = '1';
                rows.push_back(r);
            }
        out.push_back(LinearCode::from_generator(BitMatrix::from_strings(rows, n)));
    }
    return out;
}

inline GroupTable::Element mod(long long x, std::size_t m)
{
    const auto mm = static_cast<long long>(m);
    return static_cast<GroupTable::Element>(((x % mm) + mm) % mm);
}

inline std::vector<GroupTable::Element> symmetric(const std::vector<long long>& gens, std::size_t m)
{
    std::vector<GroupTable::Element> out;
    for (long long g : gens) {
        out.push_back(mod(g, m));
        out.push_back(mod(-g, m));
    }
    return out;
}

struct Instance {
    std::string name;
    ExamplePair pair;
    bool uniform_pairing = true;   ///< every label self-paired, or none are
};

inline Instance cayley_instance(std::string name, const GroupTable& g, const std::vector<GroupTable::Element>& a,
                                const std::vector<GroupTable::Element>& b, bool uniform = true)
{
    const auto [ca, cb] = double_cover_pair(cayley_graph(g, a, CayleySide::left), cayley_graph(g, b, CayleySide::right));
    return Instance{std::move(name), make_pair_from_specs(ca, cb), uniform};
}

/// Construction outputs with uniform pairings (22 instances).
inline std::vector<Instance> uniform_corpus()
{
    std::vector<Instance> out;
    for (std::size_t m = 5; m <= 14; ++m)
        out.push_back(cayley_instance("Z" + std::to_string(m) + " {1,-1} {2,-2}", GroupTable::cyclic(m), symmetric({1}, m), symmetric({2}, m)));
    for (std::size_t m : {7, 8})
        out.push_back(cayley_instance("Z" + std::to_string(m) + " {1,-1} {3,-3}", GroupTable::cyclic(m), symmetric({1}, m), symmetric({3}, m)));
    for (std::size_t m : {9, 10, 11})
        out.push_back(cayley_instance("Z" + std::to_string(m) + " {+-1,+-2} {+-3,+-4}", GroupTable::cyclic(m), symmetric({1, 2}, m),
                                      symmetric({3, 4}, m)));
    for (std::size_t m = 5; m <= 8; ++m) {
        const auto r = [m](long long i) { return GroupTable::dihedral_rotation(m, static_cast<std::size_t>(mod(i, m))); };
        out.push_back(cayley_instance("D" + std::to_string(m) + " rotations", GroupTable::dihedral(m), {r(1), r(-1)}, {r(2), r(-2)}));
    }
    for (std::size_t m : {4, 6, 8}) {
        const auto s = [m](std::size_t i) { return GroupTable::dihedral_reflection(m, i); };
        out.push_back(cayley_instance("D" + std::to_string(m) + " reflections", GroupTable::dihedral(m), {s(0), s(2)}, {s(1), s(3)}));
    }
    return out;
}

/// Uniform corpus plus instances mixing self-paired and paired labels.
inline std::vector<Instance> full_corpus()
{
    std::vector<Instance> out = uniform_corpus();
    out.push_back(Instance{"Petersen remedy", petersen_remedy(), false});
    out.push_back(cayley_instance("Z6 {1,-1} {3,3}", GroupTable::cyclic(6), symmetric({1}, 6), {3, 3}, false));
    return out;
}

/// Random Z_m pair {+-s} left, {+-t} right with disjoint generators, m <= max_m.
inline ExamplePair random_cyclic_pair(std::mt19937_64& rng, std::size_t max_m = 16)
{
    std::uniform_int_distribution<std::size_t> pick_m(5, max_m);
    for (;;) {
        const std::size_t m = pick_m(rng);
        std::uniform_int_distribution<long long> pick(1, static_cast<long long>(m) - 1);
        const long long s = pick(rng), t = pick(rng);
        if (mod(s, m) == mod(t, m) || mod(s, m) == mod(-t, m)) continue;
        const auto [ca, cb] = double_cover_pair(cayley_graph(GroupTable::cyclic(m), symmetric({s}, m), CayleySide::left),
                                                cayley_graph(GroupTable::cyclic(m), symmetric({t}, m), CayleySide::right));
        return make_pair_from_specs(ca, cb);
    }
}

/// Index of each vertex of `side` in sorted order, the numbering used by the square graphs.
inline std::vector<std::size_t> side_index(const Partition& p, std::uint8_t side)
{
    std::vector<std::size_t> idx(p.size(), 0);
    std::size_t next = 0;
    for (std::size_t v = 0; v < p.size(); ++v)
        if (p[v] == side) idx[v] = next++;
    return idx;
}

/// Direct evaluation of the case formulas: row s belongs to vertex j = s / rows(local),
/// r = s mod rows(local); column t is square t, nonzero only when t lies in the
/// local view of vertex j, where it takes local(r, l) with l = a * Δ + b.
inline BitMatrix formula_matrix(const SquareComplex& x, const BitMatrix& local, int side)
{
    const std::size_t d = x.delta, rows = local.rows();
    const auto idx = side_index(x.partition, static_cast<std::uint8_t>(side));
    const std::size_t nv = side == 0 ? x.v0.size() : x.v1.size();
    BitMatrix h(nv * rows, x.squares.size());
    for (std::size_t s = 0; s < h.rows(); ++s) {
        const std::size_t j = s / rows, r = s % rows;
        for (std::size_t t = 0; t < x.squares.size(); ++t) {
            const Square& q = x.squares[t];
            std::vector<std::pair<Vertex, std::size_t>> view;
            if (side == 0) {
                view = {{q.v, q.a * d + q.b}, {q.v_prime, q.a_prime * d + q.b_prime}};
            } else {
                view = {{q.w, q.a_at_w * d + q.b}, {q.w_prime, q.a * d + q.b_at_w_prime}};
            }
            bool bit = false;
            for (const auto& [vertex, l] : view)
                if (idx[vertex] == j && local.get(r, l)) bit = !bit;
            if (bit) h.set(s, t);
        }
    }
    return h;
}

} // namespace qtanner::testing

#endif // QTANNER_TESTS_SUPPORT_HPP

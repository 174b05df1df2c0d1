#ifndef QTANNER_EXAMPLES_HPP
#define QTANNER_EXAMPLES_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qtanner/code.hpp"
#include "qtanner/complex.hpp"
#include "qtanner/error.hpp"
#include "qtanner/graph.hpp"
#include "qtanner/group.hpp"
#include "qtanner/int_matrix.hpp"

namespace qtanner {

/// 5-cycle 1-2-3-4-5 as reference.
inline IntMatrix c5_matrix()
{
    return IntMatrix::from_rows({{0, 1, 0, 0, 1}, {1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 1}, {1, 0, 0, 1, 0}});
}

/// 5-cycle 1'-3'-5'-2'-4' as reference.
inline IntMatrix c5_prime_matrix()
{
    return IntMatrix::from_rows({{0, 0, 1, 1, 0}, {0, 0, 0, 1, 1}, {1, 0, 0, 0, 1}, {1, 1, 0, 0, 0}, {0, 1, 1, 0, 0}});
}

/// [[C5, I], [I, C5']]
inline IntMatrix petersen_block_ma()
{
    return block_matrix(c5_matrix(), IntMatrix::identity(5), IntMatrix::identity(5), c5_prime_matrix());
}

/// [[C5, 0], [0, C5]]
inline IntMatrix petersen_block_mb() { return block_matrix(c5_matrix(), IntMatrix(5, 5), IntMatrix(5, 5), c5_matrix()); }

/// Petersen graph on vertices 0..4 (outer 1..5) and 5..9 (inner 1'..5').
/// a0 is the spoke i <-> i', a1 steps +1 outside and +2 inside, a2 = a1^{-1}.
inline SchreierSpec petersen_spec()
{
    std::vector<Vertex> spoke(10), step(10);
    for (Vertex i = 0; i < 5; ++i) {
        spoke[i] = i + 5;
        spoke[i + 5] = i;
        step[i] = (i + 1) % 5;
        step[i + 5] = (i + 2) % 5 + 5;
    }
    SchreierSpec s;
    s.n_vertices = 10;
    const Permutation p(step);
    s.perms = {Permutation(spoke), p, p.inverse()};
    s.pairing = {0, 2, 1};
    s.validate();
    return s;
}

/// Two 5-cycles, b0 = +1 on each block and b1 = b0^{-1}.
inline SchreierSpec petersen_partner_spec()
{
    std::vector<Vertex> step(10);
    for (Vertex i = 0; i < 5; ++i) {
        step[i] = (i + 1) % 5;
        step[i + 5] = (i + 1) % 5 + 5;
    }
    SchreierSpec s;
    s.n_vertices = 10;
    const Permutation p(step);
    s.perms = {p, p.inverse()};
    s.pairing = {1, 0};
    s.validate();
    return s;
}

struct ExamplePair {
    SchreierSpec a;
    SchreierSpec b;
    LabeledGraph ga;
    LabeledGraph gb;
};

inline ExamplePair make_pair_from_specs(SchreierSpec a, SchreierSpec b)
{
    LabeledGraph ga = schreier_graph(a), gb = schreier_graph(b);
    return ExamplePair{std::move(a), std::move(b), std::move(ga), std::move(gb)};
}

/// Degree equalization for the Petersen pair: a self-loop label on the partner,
/// the quadripartite step, then double covers of both graphs (40 vertices, Δ = 3).
inline ExamplePair petersen_remedy()
{
    const SchreierSpec b3 = with_self_loops(petersen_partner_spec());
    const auto [qa, qb] = quadripartite_pair(petersen_spec(), b3);
    const auto [ca, cb] = double_cover_pair(qa, qb);
    return make_pair_from_specs(ca, cb);
}

/// Cay_l(Z_m, {1, -1}) and Cay_r(Z_m, {2, -2}).
inline std::pair<SchreierSpec, SchreierSpec> cyclic_specs(std::size_t m)
{
    if (m < 3) throw Error(ErrorKind::domain, "cyclic example needs m >= 3");
    const GroupTable z = GroupTable::cyclic(m);
    const auto e = [m](long long x) { return static_cast<GroupTable::Element>(((x % static_cast<long long>(m)) + static_cast<long long>(m)) % static_cast<long long>(m)); };
    return {cayley_graph(z, {e(1), e(-1)}, CayleySide::left), cayley_graph(z, {e(2), e(-2)}, CayleySide::right)};
}

/// Double covers of the cyclic pair: 2m vertices, |V0| = m, Δ = 2.
inline ExamplePair cyclic_pipeline(std::size_t m)
{
    const auto [a, b] = cyclic_specs(m);
    const auto [ca, cb] = double_cover_pair(a, b);
    return make_pair_from_specs(ca, cb);
}

/// repN, spcN, fullN.
inline LinearCode local_code_by_name(const std::string& name)
{
    std::size_t split = 0;
    while (split < name.size() && std::isalpha(static_cast<unsigned char>(name[split]))) ++split;
    const std::string kind = name.substr(0, split), digits = name.substr(split);
    if (digits.empty() || digits.size() > 4 || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error(ErrorKind::parse, "local code '" + name + "' must look like rep2, spc3 or full4");
    const std::size_t n = std::stoul(digits);
    if (n == 0) throw Error(ErrorKind::parse, "local code length must be positive");
    if (kind == "rep") return LinearCode::repetition(n);
    if (kind == "spc") return LinearCode::single_parity_check(n);
    if (kind == "full") return LinearCode::full(n);
    throw Error(ErrorKind::parse, "unknown local code family '" + kind + "'");
}

} // namespace qtanner

#endif // QTANNER_EXAMPLES_HPP

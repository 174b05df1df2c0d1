#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace qtanner;
using namespace qtanner::testing;

namespace {

SchreierSpec rotation_spec(std::size_t n, std::vector<long long> shifts)
{
    SchreierSpec s;
    s.n_vertices = n;
    for (long long k : shifts) {
        const Permutation p = Permutation::rotation(n, static_cast<std::size_t>(mod(k, n)));
        s.perms.push_back(p);
        s.perms.push_back(p.inverse());
        s.pairing.push_back(static_cast<Label>(s.perms.size() - 1));
        s.pairing.push_back(static_cast<Label>(s.perms.size() - 2));
    }
    s.validate();
    return s;
}

/// Cycles on 0..3 and 4..7; the second uses the labelling given by `alternating`.
LabeledGraph two_cycles(bool alternating)
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 4; ++i) edges.push_back(Edge{{i, static_cast<Vertex>((i + 1) % 4)}, {0, 1}, false});
    for (Vertex i = 0; i < 4; ++i) {
        const Vertex u = 4 + i, v = static_cast<Vertex>(4 + (i + 1) % 4);
        if (alternating) edges.push_back(Edge{{u, v}, {static_cast<Label>(i % 2), static_cast<Label>(i % 2)}, false});
        else edges.push_back(Edge{{u, v}, {0, 1}, false});
    }
    return LabeledGraph(8, 2, canonical_edge_order(std::move(edges)));
}

LabeledGraph rungs()
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 4; ++i) edges.push_back(Edge{{i, i + 4}, {0, 0}, false});
    return LabeledGraph(8, 1, std::move(edges));
}

} // namespace

TEST(Permutation, RejectsNonBijection) { EXPECT_THROW(Permutation(std::vector<Vertex>{0, 0, 1}), Error); }

TEST(Permutation, InverseAndComposition)
{
    const Permutation p(std::vector<Vertex>{2, 0, 3, 1});
    EXPECT_TRUE(p.after(p.inverse()).is_identity());
    EXPECT_TRUE(p.inverse().after(p).is_identity());
}

TEST(SchreierSpec, PairingMustInvertPermutations)
{
    SchreierSpec s = rotation_spec(5, {1});
    s.pairing = {0, 1};
    EXPECT_THROW(s.validate(), Error);
    SchreierSpec t = rotation_spec(5, {1});
    t.pairing = {1, 1};
    EXPECT_THROW(t.validate(), Error);
}

TEST(SchreierGraph, FiveCycleMatchesReferenceC5)
{
    const LabeledGraph g = schreier_graph(rotation_spec(5, {1}));
    EXPECT_EQ(g.adjacency(), c5_matrix());
    EXPECT_EQ(g.n_edges(), 5U);
    EXPECT_TRUE(g.is_loop_free());
}

TEST(SchreierGraph, IdentityActionGivesSelfLoops)
{
    SchreierSpec s;
    s.n_vertices = 3;
    s.perms = {Permutation::identity(3)};
    s.pairing = {0};
    const LabeledGraph g = schreier_graph(s);
    EXPECT_EQ(g.n_edges(), 3U);
    for (const Edge& e : g.edges()) {
        EXPECT_TRUE(e.is_loop());
        EXPECT_TRUE(e.folded);
    }
    EXPECT_EQ(g.adjacency(), IntMatrix::identity(3));
}

TEST(SchreierGraph, PetersenMatchesReferenceMatrix)
{
    const LabeledGraph g = schreier_graph(petersen_spec());
    EXPECT_EQ(g.n_vertices(), 10U);
    EXPECT_EQ(g.degree(), 3U);
    EXPECT_EQ(g.adjacency(), petersen_block_ma());
    EXPECT_EQ(schreier_graph(petersen_partner_spec()).adjacency(), petersen_block_mb());
}

TEST(SchreierGraph, HalfEdgesPairWithPairedLabel)
{
    const SchreierSpec s = petersen_spec();
    const LabeledGraph g = schreier_graph(s);
    for (Vertex v = 0; v < 10; ++v)
        for (Label a = 0; a < 3; ++a) {
            const HalfEdge h = g.out(v, a);
            EXPECT_EQ(g.target(h), s.perms[a](v));
            EXPECT_EQ(g.label(g.partner(h)), s.pairing[a]);
        }
}

TEST(SchreierGraph, OutputIsAlwaysWellLabelled)
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 50; ++t) {
        const auto p = random_cyclic_pair(rng);
        for (const SchreierSpec& s : {p.a, p.b}) {
            const LabeledGraph g = schreier_graph(s);
            EXPECT_EQ(g.permutations(), s.perms);
            EXPECT_EQ(schreier_spec_of(g).perms, s.perms);
        }
    }
}

TEST(SchreierGraph, EdgesFollowCanonicalOrder)
{
    const LabeledGraph g = schreier_graph(petersen_spec());
    for (std::size_t i = 1; i < g.n_edges(); ++i) {
        const Edge &p = g.edge(i - 1), &q = g.edge(i);
        EXPECT_LE(std::make_pair(std::min(p.end[0], p.end[1]), std::max(p.end[0], p.end[1])),
                  std::make_pair(std::min(q.end[0], q.end[1]), std::max(q.end[0], q.end[1])));
    }
}

TEST(Cayley, CyclicLeftIsCycle)
{
    const SchreierSpec s = cayley_graph(GroupTable::cyclic(5), {1, 4}, CayleySide::left);
    EXPECT_EQ(schreier_graph(s).adjacency(), c5_matrix());
    EXPECT_EQ(s.pairing, (std::vector<Label>{1, 0}));
}

TEST(Cayley, LeftAndRightCommute)
{
    const SchreierSpec a = cayley_graph(GroupTable::cyclic(5), {1, 4}, CayleySide::left);
    const SchreierSpec b = cayley_graph(GroupTable::cyclic(5), {2, 3}, CayleySide::right);
    EXPECT_TRUE(commute_check(a, b));
    const GroupTable d = GroupTable::dihedral(5);
    const auto r = [](std::size_t i) { return GroupTable::dihedral_rotation(5, i); };
    const auto s = [](std::size_t i) { return GroupTable::dihedral_reflection(5, i); };
    EXPECT_TRUE(commute_check(cayley_graph(d, {r(1), r(4), s(0)}, CayleySide::left), cayley_graph(d, {s(1), s(2)}, CayleySide::right)));
    EXPECT_FALSE(commute_check(cayley_graph(d, {s(0)}, CayleySide::left), cayley_graph(d, {s(1)}, CayleySide::left)));
}

TEST(Cayley, DihedralTableMatchesHandRule)
{
    // r^i s^j * r^k s^l = r^(i + (-1)^j k) s^(j + l)
    const std::size_t m = 4;
    const GroupTable d = GroupTable::dihedral(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < 2; ++l) {
                    const long long rot = static_cast<long long>(i) + (j ? -1 : 1) * static_cast<long long>(k);
                    const auto expect = static_cast<GroupTable::Element>(mod(rot, m) + m * ((j + l) % 2));
                    EXPECT_EQ(d.mul(static_cast<GroupTable::Element>(i + m * j), static_cast<GroupTable::Element>(k + m * l)), expect);
                }
}

TEST(Cayley, DihedralReflectionsAreSelfPaired)
{
    const std::size_t m = 4;
    const SchreierSpec s = cayley_graph(GroupTable::dihedral(m), {GroupTable::dihedral_reflection(m, 0), GroupTable::dihedral_reflection(m, 1)},
                                        CayleySide::left);
    EXPECT_EQ(s.pairing, (std::vector<Label>{0, 1}));
    const LabeledGraph g = schreier_graph(s);
    EXPECT_EQ(g.degree(), 2U);
    EXPECT_TRUE(g.is_loop_free());
    for (Vertex v = 0; v < g.n_vertices(); ++v)
        for (Label a = 0; a < 2; ++a) EXPECT_EQ(g.step(g.step(v, a), a), v);
}

TEST(Cayley, DuplicateSelfInverseLabelsPairWithThemselves)
{
    const SchreierSpec s = cayley_graph(GroupTable::cyclic(6), {3, 3, 1, 5}, CayleySide::left);
    EXPECT_EQ(s.pairing, (std::vector<Label>{0, 1, 3, 2}));
}

TEST(Cayley, NonSymmetricLabelsRejected)
{
    EXPECT_THROW(cayley_graph(GroupTable::cyclic(5), {1, 2}, CayleySide::left), Error);
    EXPECT_THROW(cayley_graph(GroupTable::cyclic(5), {1, 4, 1}, CayleySide::left), Error);
}

TEST(Commute, PetersenPair) { EXPECT_TRUE(commute_check(petersen_spec(), petersen_partner_spec())); }

TEST(Commute, IdentityCommutesWithEverything)
{
    SchreierSpec id;
    id.n_vertices = 10;
    id.perms = {Permutation::identity(10)};
    id.pairing = {0};
    EXPECT_TRUE(commute_check(petersen_spec(), id));
}

TEST(Commute, TranspositionsSharingAPoint)
{
    SchreierSpec a, b;
    a.n_vertices = b.n_vertices = 4;
    a.perms = {Permutation(std::vector<Vertex>{1, 0, 2, 3})};
    b.perms = {Permutation(std::vector<Vertex>{0, 2, 1, 3})};
    a.pairing = b.pairing = {0};
    EXPECT_FALSE(commute_check(a, b));
    EXPECT_NE(a.perms[0].after(b.perms[0]), b.perms[0].after(a.perms[0]));
}

TEST(Commute, SizeMismatchIsError) { EXPECT_THROW(commute_check(petersen_spec(), rotation_spec(5, {1})), Error); }

TEST(Commute, ImpliesIntegerAdjacencyCommutation)
{
    std::mt19937_64 rng(22);
    for (int t = 0; t < 40; ++t) {
        const auto p = random_cyclic_pair(rng);
        ASSERT_TRUE(commute_check(p.a, p.b));
        const IntMatrix ma = p.ga.adjacency(), mb = p.gb.adjacency();
        EXPECT_EQ(ma * mb, mb * ma);
    }
    const IntMatrix ma = petersen_block_ma(), mb = petersen_block_mb();
    EXPECT_EQ(ma * mb, mb * ma);
}

TEST(Overlap, PetersenPairOverlaps)
{
    const auto p = make_pair_from_specs(petersen_spec(), petersen_partner_spec());
    const auto common = overlap_check(p.ga, p.gb);
    EXPECT_FALSE(common.empty());
    EXPECT_NE(std::find(common.begin(), common.end(), std::make_pair(Vertex{0}, Vertex{1})), common.end());
}

TEST(Overlap, DisjointCirculants)
{
    const LabeledGraph a = schreier_graph(rotation_spec(5, {1})), b = schreier_graph(rotation_spec(5, {2}));
    EXPECT_TRUE(overlap_check(a, b).empty());
    auto ea = a.endpoint_multiset(), eb = b.endpoint_multiset();
    std::vector<std::pair<Vertex, Vertex>> both;
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(both));
    EXPECT_TRUE(both.empty());
}

TEST(Overlap, SelfOverlapListsEveryEdge)
{
    const LabeledGraph g = schreier_graph(petersen_spec());
    EXPECT_EQ(overlap_check(g, g).size(), 15U);
}

TEST(InversePairs, CayleyPairsAreCompatible)
{
    const auto a = schreier_graph(cayley_graph(GroupTable::cyclic(7), {1, 6}, CayleySide::left));
    const auto b = schreier_graph(cayley_graph(GroupTable::cyclic(7), {2, 5, 3, 4}, CayleySide::right));
    EXPECT_TRUE(inverse_pair_compat(a, b));
}

TEST(InversePairs, CoveredPetersenPair)
{
    const auto p = petersen_remedy();
    EXPECT_TRUE(inverse_pair_compat(p.ga, p.gb));
}

TEST(InversePairs, MutatedComponentBreaksCompatibility)
{
    EXPECT_TRUE(inverse_pair_compat(rungs(), two_cycles(false)));
    EXPECT_FALSE(inverse_pair_compat(rungs(), two_cycles(true)));
}

TEST(DoubleCover, PetersenGivesDesargues)
{
    const LabeledGraph cover = bipartite_double_cover(schreier_graph(petersen_spec()));
    EXPECT_EQ(cover.n_vertices(), 20U);
    EXPECT_EQ(cover.degree(), 3U);
    EXPECT_TRUE(cover.is_bipartite());
    EXPECT_TRUE(cover.is_bipartite_on(*cover.partition()));
    EXPECT_TRUE(cover.is_loop_free());
    EXPECT_EQ(cover.component_count(), 1U);
}

TEST(DoubleCover, SelfLoopBecomesCrossingEdge)
{
    SchreierSpec s;
    s.n_vertices = 1;
    s.perms = {Permutation::identity(1)};
    s.pairing = {0};
    const LabeledGraph cover = bipartite_double_cover(schreier_graph(s));
    ASSERT_EQ(cover.n_edges(), 1U);
    EXPECT_EQ(std::minmax({cover.edge(0).end[0], cover.edge(0).end[1]}), std::make_pair(Vertex{0}, Vertex{1}));
}

TEST(DoubleCover, FiveCycleGivesTenCycle)
{
    const LabeledGraph cover = bipartite_double_cover(schreier_graph(rotation_spec(5, {1})));
    EXPECT_EQ(cover.n_vertices(), 10U);
    EXPECT_EQ(cover.component_count(), 1U);
    EXPECT_EQ(cover.degree(), 2U);
    EXPECT_EQ(cover.n_edges(), 10U);
}

TEST(DoubleCover, SpecLevelCoverMatchesGraphCover)
{
    for (const SchreierSpec& s : {petersen_spec(), petersen_partner_spec(), with_self_loops(petersen_partner_spec())})
        EXPECT_EQ(schreier_graph(double_cover_spec(s)).adjacency(), bipartite_double_cover(schreier_graph(s)).adjacency());
}

TEST(DoubleCover, AlwaysBipartiteAndLoopFree)
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 7);
        SchreierSpec s;
        s.n_vertices = n;
        std::vector<Vertex> img(n);
        std::iota(img.begin(), img.end(), Vertex{0});
        std::shuffle(img.begin(), img.end(), rng);
        const Permutation p(img);
        s.perms = {p, p.inverse(), Permutation::identity(n)};
        s.pairing = {1, 0, 2};
        const LabeledGraph cover = bipartite_double_cover(schreier_graph(s));
        EXPECT_TRUE(cover.is_bipartite_on(*cover.partition()));
        EXPECT_TRUE(cover.is_loop_free());
    }
}

TEST(Quadripartite, CyclicPairOutputs)
{
    const SchreierSpec a = cayley_graph(GroupTable::cyclic(5), {1, 4}, CayleySide::left);
    const SchreierSpec b = cayley_graph(GroupTable::cyclic(5), {2, 3}, CayleySide::right);
    const auto [qa, qb] = quadripartite_pair(a, b);
    const LabeledGraph ga = schreier_graph(qa), gb = schreier_graph(qb);
    EXPECT_EQ(ga.n_vertices(), 10U);
    EXPECT_TRUE(commute_check(qa, qb));
    EXPECT_TRUE(overlap_check(ga, gb).empty());
    EXPECT_TRUE(ga.is_bipartite_on(*qa.partition));
    // Copies keep their edges inside a sheet, so the second output never crosses sides.
    EXPECT_FALSE(gb.is_bipartite_on(*qa.partition));
}

TEST(Quadripartite, AdjacencyHasDisplayedBlockForm)
{
    const SchreierSpec a = petersen_spec(), b = with_self_loops(petersen_partner_spec());
    const auto [qa, qb] = quadripartite_pair(a, b);
    const IntMatrix ma = schreier_graph(a).adjacency(), mb = schreier_graph(b).adjacency();
    const IntMatrix zero(10, 10);
    EXPECT_EQ(schreier_graph(qa).adjacency(), block_matrix(zero, ma, ma, zero));
    EXPECT_EQ(schreier_graph(qb).adjacency(), block_matrix(mb, zero, zero, mb));
}

TEST(Quadripartite, IdentityActionGivesLoopsOnBothBlocks)
{
    SchreierSpec id;
    id.n_vertices = 5;
    id.perms = {Permutation::identity(5)};
    id.pairing = {0};
    const auto [qa, qb] = quadripartite_pair(rotation_spec(5, {1}), id);
    const LabeledGraph gb = schreier_graph(qb);
    EXPECT_EQ(gb.n_edges(), 10U);
    for (const Edge& e : gb.edges()) EXPECT_TRUE(e.is_loop());
}

TEST(Quadripartite, PropertiesOverRandomCommutingPairs)
{
    std::mt19937_64 rng(24);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<std::size_t> pick_m(3, 12);
        const std::size_t m = pick_m(rng);
        std::uniform_int_distribution<long long> pick(0, static_cast<long long>(m) - 1);
        const SchreierSpec a = cayley_graph(GroupTable::cyclic(m), symmetric({pick(rng)}, m), CayleySide::left);
        const SchreierSpec b = cayley_graph(GroupTable::cyclic(m), symmetric({pick(rng)}, m), CayleySide::right);
        const auto [qa, qb] = quadripartite_pair(a, b);
        const LabeledGraph ga = schreier_graph(qa), gb = schreier_graph(qb);
        EXPECT_TRUE(commute_check(qa, qb));
        EXPECT_TRUE(overlap_check(ga, gb).empty());
        EXPECT_TRUE(ga.is_bipartite_on(*qa.partition));
        const auto [ca, cb] = double_cover_pair(a, b);
        EXPECT_TRUE(commute_check(ca, cb));
        EXPECT_TRUE(schreier_graph(ca).is_bipartite_on(*ca.partition));
        EXPECT_TRUE(schreier_graph(cb).is_bipartite_on(*ca.partition));
    }
}

TEST(Quadripartite, NonCommutingInputsRejected)
{
    SchreierSpec a, b;
    a.n_vertices = b.n_vertices = 4;
    a.perms = {Permutation(std::vector<Vertex>{1, 0, 2, 3})};
    b.perms = {Permutation(std::vector<Vertex>{0, 2, 1, 3})};
    a.pairing = b.pairing = {0};
    try {
        quadripartite_pair(a, b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_commuting);
    }
}

TEST(TwoFactorization, CirculantOnSeven)
{
    const LabeledGraph g = schreier_graph(rotation_spec(7, {1, 2}));
    const SchreierSpec s = two_factorization(g);
    EXPECT_EQ(s.degree(), 4U);
    EXPECT_EQ(schreier_graph(s).endpoint_multiset(), g.endpoint_multiset());
}

TEST(TwoFactorization, CycleIsOneRotation)
{
    const LabeledGraph g = schreier_graph(rotation_spec(6, {1}));
    const SchreierSpec s = two_factorization(g);
    ASSERT_EQ(s.degree(), 2U);
    EXPECT_EQ(schreier_graph(s).endpoint_multiset(), g.endpoint_multiset());
    std::vector<Vertex> orbit{0};
    for (Vertex v = s.perms[0](0); v != 0; v = s.perms[0](v)) orbit.push_back(v);
    EXPECT_EQ(orbit.size(), 6U);
}

TEST(TwoFactorization, DisjointFourCycles)
{
    std::vector<Edge> edges;
    for (Vertex base : {0U, 4U})
        for (Vertex i = 0; i < 4; ++i) {
            edges.push_back(Edge{{base + i, base + (i + 1) % 4}, {0, 1}, false});
            edges.push_back(Edge{{base + i, base + (i + 2) % 4}, {2, 3}, false});
        }
    const LabeledGraph g(8, 4, canonical_edge_order(std::move(edges)));
    const SchreierSpec s = two_factorization(g);
    EXPECT_EQ(schreier_graph(s).endpoint_multiset(), g.endpoint_multiset());
    for (const auto& p : s.perms)
        for (Vertex v = 0; v < 8; ++v) EXPECT_EQ(p(v) / 4, v / 4);
}

TEST(TwoFactorization, MultigraphsAndRandomRegularGraphs)
{
    std::mt19937_64 rng(25);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 4 + static_cast<std::size_t>(t % 9);
        SchreierSpec s;
        s.n_vertices = n;
        for (int f = 0; f < 1 + t % 3; ++f) {
            std::vector<Vertex> img(n);
            std::iota(img.begin(), img.end(), Vertex{0});
            do std::shuffle(img.begin(), img.end(), rng);
            while (std::any_of(img.begin(), img.end(), [&](Vertex v) { return img[v] == v; }));
            const Permutation p(img);
            s.perms.push_back(p);
            s.perms.push_back(p.inverse());
            s.pairing.push_back(static_cast<Label>(s.perms.size() - 1));
            s.pairing.push_back(static_cast<Label>(s.perms.size() - 2));
        }
        const LabeledGraph g = schreier_graph(s);
        const SchreierSpec f = two_factorization(g);
        ASSERT_EQ(schreier_graph(f).endpoint_multiset(), g.endpoint_multiset());
    }
}

TEST(TwoFactorization, OddDegreeUnsupported)
{
    try {
        two_factorization(schreier_graph(petersen_spec()));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::unsupported);
    }
}

TEST(BlockCommutation, PetersenRelationsHold)
{
    const auto r = block_commutation_report(petersen_block_ma(), petersen_block_mb(), 5);
    EXPECT_TRUE(r.a2b2_eq_b1a2);
    EXPECT_TRUE(r.a1b1_eq_b1a1);
    EXPECT_TRUE(r.a3b2_eq_b2a3);
    EXPECT_TRUE(r.mb_block_diagonal);
    EXPECT_TRUE(r.commutes);
}

TEST(BlockCommutation, DecoupledBlocks)
{
    const IntMatrix ma = block_matrix(c5_matrix(), IntMatrix(5, 5), IntMatrix(5, 5), c5_prime_matrix());
    const auto r = block_commutation_report(ma, petersen_block_mb(), 5);
    EXPECT_TRUE(r.commutes);
}

TEST(BlockCommutation, PerturbedCouplingBreaksFirstRelation)
{
    std::mt19937_64 rng(26);
    for (int t = 0; t < 20; ++t) {
        IntMatrix ma = petersen_block_ma();
        std::uniform_int_distribution<std::size_t> pick(0, 4);
        const std::size_t i = pick(rng), j = pick(rng);
        ma(i, 5 + j) = 1 - ma(i, 5 + j);
        ma(5 + j, i) = ma(i, 5 + j);
        const auto r = block_commutation_report(ma, petersen_block_mb(), 5);
        EXPECT_FALSE(r.a2b2_eq_b1a2);
        EXPECT_EQ(r.commutes, ma * petersen_block_mb() == petersen_block_mb() * ma);
    }
}

TEST(BlockCommutation, DimensionMismatch) { EXPECT_THROW(block_commutation_report(petersen_block_ma(), c5_matrix(), 5), Error); }

TEST(Conjugation, IdentityLeavesMatrixUnchanged)
{
    const auto r = conjugate_component(petersen_block_ma(), petersen_block_mb(), 5, Permutation::identity(5));
    EXPECT_EQ(r.matrix, petersen_block_ma());
    EXPECT_TRUE(r.commutes_with_mb);
}

TEST(Conjugation, VerdictMatchesDirectProductForAllInnerPermutations)
{
    std::vector<Vertex> img{0, 1, 2, 3, 4};
    const IntMatrix mb = petersen_block_mb();
    do {
        const Permutation p(img);
        const auto r = conjugate_component(petersen_block_ma(), mb, 5, p);
        ASSERT_EQ(r.commutes_with_mb, r.matrix * mb == mb * r.matrix);
        if (r.a3_commutes_with_b2) {
            ASSERT_TRUE(r.commutes_with_mb);
        }
        const IntMatrix pm = permutation_matrix(p);
        ASSERT_EQ(r.matrix.block(5, 5, 5, 5), pm * c5_prime_matrix() * pm.transpose());
    } while (std::next_permutation(img.begin(), img.end()));
}

TEST(Conjugation, CommonAutomorphismKeepsCommutation)
{
    const Permutation rotate = Permutation::rotation(5, 1);
    const Permutation flip(std::vector<Vertex>{0, 4, 3, 2, 1});
    for (const Permutation& p : {rotate, flip}) {
        const auto r = conjugate_component(petersen_block_ma(), petersen_block_mb(), 5, p);
        EXPECT_TRUE(r.a3_commutes_with_b2);
        EXPECT_TRUE(r.commutes_with_mb);
    }
}

TEST(CayleyStructure, PetersenPartnerIsDisconnected)
{
    EXPECT_EQ(schreier_graph(petersen_spec()).component_count(), 1U);
    EXPECT_EQ(schreier_graph(petersen_partner_spec()).component_count(), 2U);
}

TEST(GroupTable, RejectsNonAssociativeTable)
{
    // a Latin square with identity 0 that is not associative
    const std::vector<std::vector<GroupTable::Element>> bad{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    EXPECT_THROW(GroupTable::from_table(bad), Error);
    EXPECT_NO_THROW(GroupTable::dihedral(6));
    EXPECT_EQ(GroupTable::dihedral(6).order(), 12U);
}

#include <gtest/gtest.h>

#include "polytree/omega.hpp"
#include "support.hpp"

using namespace poly;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

Tree linear(std::size_t nodes)
{
    return tree_from_encoding(std::string(nodes, '(') + "|" + std::string(nodes, ')'));
}

}  // namespace

TEST(Omega, IdentityAndUnitLaws)
{
    for (const auto& s : undecorated_tree_classes(3, Stumps::Include))
        for (const auto& t : undecorated_tree_classes(3, Stumps::Include))
            for (const auto& phi : hom_omega(s, t)) {
                EXPECT_EQ(compose(omega_identity(t), phi), phi);
                EXPECT_EQ(compose(phi, omega_identity(s)), phi);
            }
}

TEST(Omega, CompositionIsAssociative)
{
    auto trees = undecorated_tree_classes(3, Stumps::Exclude);
    for (const auto& a : trees)
        for (const auto& b : trees)
            for (const auto& c : trees)
                for (const auto& f : hom_omega(a, b))
                    for (const auto& g : hom_omega(b, c))
                        for (const auto& h : hom_omega(c, trees.back()))
                            EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
}

TEST(Omega, MapsFromTheTrivialTreePickEdges)
{
    for (const auto& t : undecorated_tree_classes(4, Stumps::Include))
        EXPECT_EQ(hom_omega(trivial_tree(), t).size(), t.edge_count());
}

TEST(Omega, LinearTreesCountOrderPreservingMaps)
{
    for (std::size_t m = 0; m <= 3; ++m)
        for (std::size_t n = 0; n <= 3; ++n)
            EXPECT_EQ(hom_omega(linear(m), linear(n)).size(), oracle::monotone_maps(m + 1, n + 1));
}

TEST(Omega, RejectsBadNodeImages)
{
    auto s = tree_from_encoding("(|)");
    auto t = tree_from_encoding("(||)");
    // The unary node cannot go to the binary corolla: the boundaries differ.
    EXPECT_EQ(kind_of([&] { omega_from_edges(s, t, {t.root(), t.leaves()[0]}); }), ErrorKind::NotATreeMorphism);
    EXPECT_EQ(kind_of([&] { make_omega_morphism(s, t, {t.root(), t.leaves()[0]}, {whole_subtree(t)}); }),
              ErrorKind::NotATreeMorphism);
}

TEST(Omega, EmbeddingsAreFreeMaps)
{
    auto trees = undecorated_tree_classes(4, Stumps::Include);
    for (const auto& s : trees)
        for (const auto& t : trees) {
            std::size_t free_maps = 0;
            for (const auto& phi : hom_omega(s, t))
                free_maps += is_free(phi);
            EXPECT_EQ(free_maps, hom_temb(s, t).size());
            for (const auto& e : hom_temb(s, t))
                EXPECT_TRUE(is_free(omega_from_embedding(s, t, e)));
        }
}

TEST(Omega, MaterializedDiagramIsAMapOfCarriers)
{
    auto s = tree_from_encoding("((|)|)");
    auto t = tree_from_encoding("((||)|)");
    auto ms = free_monad(s);
    auto mt = free_monad(t);
    for (const auto& phi : hom_omega(s, t)) {
        auto d = materialize(phi);
        EXPECT_EQ(d.phi1.size(), d.sub_source.size());
        EXPECT_EQ(d.phi2.size(), d.marked_source.size());
        EXPECT_NO_THROW(carrier_map(phi, ms, mt));
    }
}

TEST(FreeMonad, TreeCarrierIsSubtrees)
{
    for (const auto& t : undecorated_tree_classes(4, Stumps::Include)) {
        auto m = free_monad(t);
        EXPECT_TRUE(m.exact());
        EXPECT_EQ(m.carrier().p1().size(), enumerate_subtrees(t).size());
        EXPECT_EQ(m.carrier().p2().size(), enumerate_marked_subtrees(t).size());
        EXPECT_TRUE(check_monad_laws(m).ok());
    }
}

TEST(FreeMonad, TruncatedCarrierIsBoundedPTrees)
{
    auto m = free_monoid_truncated(2);
    for (std::size_t k = 1; k <= 3; ++k) {
        auto f = free_monad(m, k);
        EXPECT_FALSE(f.exact());
        EXPECT_EQ(f.carrier().p1().size(), enumerate_ptrees(m, {k, npos, Stumps::Include}).size());
        EXPECT_EQ(f.weight(f.unit_node(0)), 0u);
        EXPECT_TRUE(check_monad_laws(f).ok());
    }
}

TEST(FreeMonad, GraftingBeyondTheBoundIsReported)
{
    auto f = free_monad(free_monoid_truncated(2), 1);
    // The binary corolla grafted onto both leaves of itself has three nodes.
    std::size_t binary = npos;
    for (std::size_t n = 0; n < f.carrier().p1().size(); ++n)
        if (f.weight(n) == 1 && f.carrier().arity(n) == 2)
            binary = n;
    ASSERT_NE(binary, npos);
    EXPECT_EQ(f.graft(binary, {binary, binary}), npos);
    EXPECT_EQ(f.graft(binary, {f.unit_node(0), f.unit_node(0)}), binary);
}

TEST(Factor, ElementsFactorThroughGenericMaps)
{
    auto f = free_monad(free_monoid_truncated(2), 2);
    for (std::size_t n = 0; n < f.carrier().p1().size(); ++n) {
        auto e = factor_element(f, n);
        EXPECT_TRUE(is_boundary_preserving(e.generic));
        EXPECT_EQ(e.middle.tree.node_count(), f.weight(n));
    }
}

TEST(BoundaryPreserving, FactorialCounts)
{
    for (std::size_t n = 0; n <= 3; ++n) {
        auto c = one_node_tree(FinSet::range("x", n));
        for (const auto& r : undecorated_tree_classes(5, Stumps::Include))
            if (r.leaf_count() == n) {
                EXPECT_EQ(count_boundary_preserving(c, r), oracle::factorial(n));
                EXPECT_EQ(boundary_preserving_maps(c, r).size(), oracle::factorial(n));
            }
    }
}

TEST(Contract, MergesTheTwoNodesAtAnInnerEdge)
{
    auto t = tree_from_encoding("((||)|)");
    auto inner = t.inner_edges();
    ASSERT_EQ(inner.size(), 1u);
    auto c = contract(t, inner[0]);
    EXPECT_EQ(c.tree.node_count(), 1u);
    EXPECT_EQ(c.tree.edge_count(), t.edge_count() - 1);
    EXPECT_EQ(c.tree.nodes()[0], "(v.0,v)");
    EXPECT_TRUE(is_boundary_preserving(c.map));
    EXPECT_TRUE(is_injective(c.map));
    EXPECT_EQ(kind_of([&] { contract(t, t.root()); }), ErrorKind::NotInnerEdge);
    EXPECT_EQ(contract_all(t, inner).tree.node_count(), 1u);
}

TEST(Covers, PosetsHaveOneElementPerSubsetOfInnerEdges)
{
    for (const auto& t : undecorated_tree_classes(5, Stumps::Include)) {
        if (t.is_trivial()) {
            EXPECT_EQ(kind_of([&] { reduced_covers(t); }), ErrorKind::TrivialTree);
            EXPECT_EQ(kind_of([&] { generic_injections(t); }), ErrorKind::TrivialTree);
            continue;
        }
        std::size_t expected = std::size_t{1} << t.inner_edges().size();
        EXPECT_EQ(reduced_covers(t).elements.size(), expected);
        EXPECT_EQ(generic_injections(t).elements.size(), expected);
    }
}

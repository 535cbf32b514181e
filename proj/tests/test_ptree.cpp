#include <gtest/gtest.h>

#include <map>

#include "polytree/ptree.hpp"
#include "support.hpp"

using namespace poly;

namespace {

// Binary plane trees with n internal nodes.
std::size_t binary_plane_trees(std::size_t n)
{
    if (n == 0)
        return 1;
    std::size_t total = 0;
    for (std::size_t left = 0; left < n; ++left)
        total += binary_plane_trees(left) * binary_plane_trees(n - 1 - left);
    return total;
}

PolyEndo one_binary_op()
{
    return make_poly(FinSet({"x"}), FinSet({"m"}), FinSet({"m.0", "m.1"}), {0, 0}, {0, 0}, {0});
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Enumerate, IdentityGivesOneLinearTreePerNodeCount)
{
    auto id = identity_endofunctor(FinSet({"x"}));
    for (std::size_t k = 0; k <= 6; ++k)
        EXPECT_EQ(enumerate_ptrees(id, {k, npos, Stumps::Include}).size(), k + 1);
}

TEST(Enumerate, PlanarTreesMatchPlaneTreeBruteForce)
{
    auto m = enumerate_ptrees(free_monoid_truncated(4), {npos, 5, Stumps::Exclude});
    std::map<std::size_t, std::size_t> by_edges;
    for (const auto& c : m.classes())
        ++by_edges[c.edges];
    for (std::size_t k = 1; k <= 5; ++k)
        EXPECT_EQ(by_edges[k], oracle::plane_trees(k).size()) << k;

    auto ms = enumerate_ptrees(free_monoid_truncated(4), {npos, 5, Stumps::Include});
    std::map<std::size_t, std::size_t> by_edges_s;
    for (const auto& c : ms.classes())
        ++by_edges_s[c.edges];
    for (std::size_t k = 1; k <= 5; ++k)
        EXPECT_EQ(by_edges_s[k], oracle::plane_trees_with_stumps(k)) << k;
}

TEST(Enumerate, BinaryOperationGivesBinaryPlaneTrees)
{
    auto w = enumerate_ptrees(one_binary_op(), {4, npos, Stumps::Include});
    std::map<std::size_t, std::size_t> by_nodes;
    for (const auto& c : w.classes())
        ++by_nodes[c.nodes];
    for (std::size_t n = 0; n <= 4; ++n)
        EXPECT_EQ(by_nodes[n], binary_plane_trees(n)) << n;
}

TEST(Enumerate, NeedsAFiniteBound)
{
    EXPECT_EQ(kind_of([] { enumerate_ptrees(free_monoid_truncated(2), {}); }), ErrorKind::InvalidArgument);
}

TEST(Enumerate, LambekHolds)
{
    EXPECT_TRUE(verify_lambek(enumerate_ptrees(free_monoid_truncated(3), {3, npos, Stumps::Include})));
    EXPECT_TRUE(verify_lambek(enumerate_ptrees(identity_endofunctor(FinSet({"x"})), {5, npos, Stumps::Include})));
    for (const auto& p : gen::random_polys(8, 23))
        EXPECT_TRUE(verify_lambek(enumerate_ptrees(p, {3, npos, Stumps::Include})));
}

TEST(Enumerate, ClassesMaterializeToRigidTreesWithDistinctCodes)
{
    for (const auto& p : gen::random_polys(8, 29)) {
        auto w = enumerate_ptrees(p, {3, npos, Stumps::Include});
        std::set<std::string> codes;
        for (std::size_t i = 0; i < w.size(); ++i) {
            auto pt = w.materialize(i);
            EXPECT_EQ(automorphisms_over_base(pt), 1u);
            EXPECT_EQ(pt.tree.node_count(), w[i].nodes);
            codes.insert(ptree_canonical_form(pt));
        }
        EXPECT_EQ(codes.size(), w.size());
    }
}

TEST(Decorations, PlanarStructuresPerTree)
{
    auto m = free_monoid_truncated(4);
    auto id = identity_endofunctor(FinSet({"x"}));
    for (const auto& t : undecorated_tree_classes(5, Stumps::Include)) {
        std::size_t orderings = 1;
        bool linear = true;
        for (std::size_t b = 0; b < t.node_count(); ++b) {
            orderings *= oracle::factorial(t.arity(b));
            linear = linear && t.arity(b) == 1;
        }
        EXPECT_EQ(decorations(t, m).size(), orderings) << canonical_form(t);
        EXPECT_EQ(decorations(t, id).size(), linear ? 1u : 0u);
    }
}

TEST(Decorations, TruncationBoundIsEnforced)
{
    auto t = tree_from_encoding("(|||)");
    EXPECT_EQ(kind_of([&] { decorations(t, free_monoid_truncated(2)); }), ErrorKind::ArityUnsupported);
}

TEST(Undecorated, ClassesMatchRootedTreeBruteForce)
{
    for (auto stumps : {Stumps::Exclude, Stumps::Include}) {
        auto enc = undecorated_encodings(5, stumps);
        for (std::size_t k = 1; k <= 5; ++k) {
            auto brute = oracle::rooted_trees(k, stumps == Stumps::Include);
            EXPECT_EQ(std::set<std::string>(enc[k].begin(), enc[k].end()), brute) << k;
        }
    }
}

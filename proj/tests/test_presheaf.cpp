#include <gtest/gtest.h>

#include "polytree/presheaf.hpp"
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

PolyEndo unary_and_binary()
{
    return make_poly(FinSet({"c"}), FinSet({"u", "b"}), FinSet({"u.0", "b.0", "b.1"}), {0, 0, 0}, {0, 1, 1}, {0, 0});
}

const SitePtr& temb5()
{
    static const SitePtr site = make_site(SiteKind::TEmb, 5);
    return site;
}

}  // namespace

TEST(Site, ObjectsMatchTreeBruteForce)
{
    std::size_t unordered = 0, planar = 0;
    for (std::size_t k = 1; k <= 5; ++k) {
        unordered += oracle::rooted_trees(k, true).size();
        planar += oracle::plane_trees_with_stumps(k);
    }
    EXPECT_EQ(temb5()->object_count(), unordered);
    EXPECT_EQ(make_site(SiteKind::Planar, 5)->object_count(), planar);
}

TEST(Site, ArrowsAreHomSets)
{
    auto temb = make_site(SiteKind::TEmb, 4);
    auto tree = make_site(SiteKind::Tree, 4);
    std::size_t embeddings = 0, maps = 0;
    for (const auto& s : temb->objects())
        for (const auto& t : temb->objects()) {
            embeddings += hom_temb(s, t).size();
            maps += hom_omega(s, t).size();
        }
    EXPECT_EQ(temb->arrow_count(), embeddings);
    EXPECT_EQ(tree->arrow_count(), maps);
}

TEST(Site, CategoryLaws)
{
    auto site = make_site(SiteKind::Tree, 3);
    for (std::size_t f = 0; f < site->arrow_count(); ++f) {
        const auto& a = site->arrows()[f];
        EXPECT_EQ(site->compose(site->identity(a.target), f), f);
        EXPECT_EQ(site->compose(f, site->identity(a.source)), f);
        for (auto g : site->arrows_from(a.target))
            for (auto h : site->arrows_from(site->arrows()[g].target))
                EXPECT_EQ(site->compose(h, site->compose(g, f)), site->compose(site->compose(h, g), f));
    }
}

TEST(Nerve, ValuesAreDecorations)
{
    auto p = unary_and_binary();
    auto x = nerve_N0(p, temb5());
    for (std::size_t o = 0; o < temb5()->object_count(); ++o)
        EXPECT_EQ(x.value(o).size(), decorations(temb5()->objects()[o], p).size());
}

TEST(Nerve, RepresentablesAreNervesOfTrees)
{
    for (std::size_t o = 0; o < temb5()->object_count(); o += 7) {
        auto rep = representable(temb5(), o);
        auto n = nerve_N0(temb5()->objects()[o].poly(), temb5());
        for (std::size_t s = 0; s < temb5()->object_count(); ++s)
            EXPECT_EQ(rep.value(s).size(), n.value(s).size());
        EXPECT_TRUE(segal_check(rep).ok);
    }
    EXPECT_EQ(kind_of([] { representable(temb5(), temb5()->object_count()); }), ErrorKind::InvalidArgument);
}

TEST(Segal, NervesPassAndDoubledPresheavesFail)
{
    for (const auto& p : gen::random_polys(6, 59))
        EXPECT_TRUE(segal_check(nerve_N0(p, temb5())).ok);
    auto x = nerve_N0(unary_and_binary(), temb5());
    std::size_t obj = temb5()->object_of(tree_from_encoding("((|))"));
    auto r = segal_check(double_at(x, obj));
    ASSERT_FALSE(r.ok);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->object, obj);
    EXPECT_FALSE(r.witness->injective);
    EXPECT_EQ(r.witness->value_size, 2 * x.value(obj).size());
}

TEST(Segal, CoversOfATree)
{
    auto t = tree_from_encoding("((||)(|))");
    auto fams = covering_families(t);
    EXPECT_EQ(fams.size(), std::size_t{1} << t.inner_edges().size());
    for (const auto& f : fams)
        EXPECT_TRUE(is_cover(t, f));
    EXPECT_FALSE(is_cover(t, {one_node_subtree(t, 0)}));
}

TEST(Sheaf, ElementaryRestrictionOfANerveIsItsCollection)
{
    auto p = unary_and_binary();
    auto x = nerve_N0(p, temb5());
    auto c = restrict_to_elementary(x);
    EXPECT_TRUE(isomorphic(c, nerve_R0(p)));
    auto e = sheaf_extend(c, temb5());
    auto unit = extension_unit(x, e);
    EXPECT_TRUE(is_natural(x, e, unit));
    EXPECT_TRUE(is_natural_iso(x, e, unit));
    EXPECT_TRUE(restrict_to_elementary(e) == c);
}

TEST(Sheaf, NaturalityNeedsMatchingBounds)
{
    auto p = unary_and_binary();
    auto x = nerve_N0(p, temb5());
    auto y = nerve_N0(p, make_site(SiteKind::TEmb, 4));
    EXPECT_EQ(kind_of([&] { is_natural(x, y, {}); }), ErrorKind::InvalidArgument);
}

TEST(NerveTheorem, Verdicts)
{
    auto p = unary_and_binary();
    auto x = nerve_N0(p, temb5());
    auto ok = nerve_theorem_check(x);
    EXPECT_EQ(ok.verdict, NerveVerdict::IsPolynomialMonadNerve);
    EXPECT_TRUE(ok.nerve_matches);
    ASSERT_TRUE(ok.reconstructed.has_value());
    EXPECT_TRUE(find_isomorphism(*ok.reconstructed, p).has_value());

    auto doubled = double_at(x, temb5()->object_of(tree_from_encoding("((|))")));
    EXPECT_EQ(nerve_theorem_check(doubled).verdict, NerveVerdict::FailsSegal);

    auto comm = nerve_theorem_check(sheaf_extend(gen::commutative_binary(), temb5()));
    EXPECT_EQ(comm.verdict, NerveVerdict::NotFlat);
    ASSERT_TRUE(comm.flat_witness.has_value());
    EXPECT_EQ(comm.flat_witness->stabiliser, (Permutation{1, 0}));
}

TEST(NerveTheorem, PlanarAndTreeSites)
{
    auto p = unary_and_binary();
    auto planar = make_site(SiteKind::Planar, 5);
    auto y = nerve_N0(p, planar);
    auto r = planar_nerve_theorem_check(y);
    EXPECT_EQ(r.verdict, NerveVerdict::IsPolynomialMonadNerve);
    EXPECT_TRUE(r.nerve_matches);
    auto np = restrict_to_planar_elementary(y);
    EXPECT_EQ(np.at(2).ops.size(), 1u);

    auto tree = make_site(SiteKind::Tree, 4);
    auto rep = representable(tree, tree->object_of(tree_from_encoding("((||))")));
    EXPECT_EQ(nerve_theorem_check(rep).verdict, NerveVerdict::IsPolynomialMonadNerve);

    auto free_id = free_monad(identity_endofunctor(FinSet({"c"})), 4);
    auto j = nerve_theorem_check(nerve_N0(free_id.carrier(), temb5()));
    EXPECT_EQ(j.verdict, NerveVerdict::IsPolynomialMonadNerve);
    EXPECT_TRUE(j.nerve_matches);
}

TEST(Presheaf, MakePresheafChecksFunctoriality)
{
    auto x = nerve_N0(unary_and_binary(), temb5());
    auto values = x.values();
    auto actions = x.actions();
    // Swapping the two elements over a corolla breaks the identity action.
    std::size_t c2 = temb5()->corolla(2);
    ASSERT_EQ(values[c2].size(), 2u);
    actions[temb5()->identity(c2)] = FinMap(values[c2], values[c2], {1, 0});
    EXPECT_EQ(kind_of([&] { make_presheaf(temb5(), values, actions); }), ErrorKind::NotAFunctor);
}

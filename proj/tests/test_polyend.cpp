#include <gtest/gtest.h>

#include <random>

#include "polytree/ptree.hpp"
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

// Sum over nodes of the product of fibre sizes of X over the input colours.
std::size_t brute_evaluation_size(const PolyEndo& p, const FinMap& x)
{
    std::size_t total = 0;
    for (std::size_t b = 0; b < p.p1().size(); ++b) {
        std::size_t prod = 1;
        for (auto e : p.fibre(b))
            prod *= x.preimage(p.s()(e)).size();
        total += prod;
    }
    return total;
}

// Nodes of outer o inner: for each outer node, a choice of inner node per input with matching colour.
std::size_t brute_composite_nodes(const PolyEndo& outer, const PolyEndo& inner)
{
    std::size_t total = 0;
    for (std::size_t b = 0; b < outer.p1().size(); ++b) {
        std::size_t prod = 1;
        for (auto e : outer.fibre(b)) {
            std::size_t choices = 0;
            for (std::size_t c = 0; c < inner.p1().size(); ++c)
                choices += inner.t()(c) == outer.s()(e);
            prod *= choices;
        }
        total += prod;
    }
    return total;
}

}  // namespace

TEST(PolyEndo, IdentityAndFreeMonoidShapes)
{
    auto id = identity_endofunctor(FinSet({"x", "y"}));
    EXPECT_EQ(id.p1().size(), 2u);
    EXPECT_EQ(id.arity(0), 1u);
    auto m = free_monoid_truncated(3);
    EXPECT_EQ(m.p1().size(), 4u);
    EXPECT_EQ(m.p2().size(), 6u);
    EXPECT_EQ(m.arity_bound(), std::optional<std::size_t>(3));
    for (std::size_t n = 0; n <= 3; ++n)
        EXPECT_EQ(m.arity(n), n);
}

TEST(PolyEndo, ShapeErrors)
{
    FinSet a({"x"}), b({"b"}), e({"e"});
    EXPECT_EQ(kind_of([&] { PolyEndo(FinMap(e, a, {0}), FinMap(FinSet({"f"}), b, {0}), FinMap(b, a, {0})); }),
              ErrorKind::ShapeMismatch);
}

TEST(Evaluate, SizesMatchSumOfProducts)
{
    std::mt19937 rng(7);
    for (const auto& p : gen::random_polys(10, 11)) {
        std::uniform_int_distribution<std::size_t> over(0, p.p0().size() - 1);
        FinSet xs = FinSet::range("x", 4);
        std::vector<std::size_t> img(4);
        for (auto& i : img)
            i = over(rng);
        FinMap x(xs, p.p0(), img);
        auto ev = evaluate(p, x);
        EXPECT_EQ(ev.set().size(), brute_evaluation_size(p, x));
    }
}

TEST(Evaluate, RejectsWrongColours)
{
    auto p = identity_endofunctor(FinSet({"x"}));
    FinMap x(FinSet({"a"}), FinSet({"y"}), {0});
    EXPECT_EQ(kind_of([&] { evaluate(p, x); }), ErrorKind::ColourMismatch);
}

TEST(PolyMap, ValidateDetectsFailures)
{
    auto m = free_monoid_truncated(2);
    auto id = identity_map(m);
    EXPECT_EQ(compose(id, id), id);
    // The unary input lands in the fibre of the binary node.
    std::vector<std::size_t> a1 = {0, 1, 2};
    std::vector<std::size_t> a2 = {1, 1, 2};
    EXPECT_EQ(kind_of([&] { validate_map(m, m, {0}, a1, a2); }), ErrorKind::SquareNotCommuting);
    FinSet one({"*"});
    auto unary = make_poly(one, FinSet({"u"}), FinSet({"e"}), {0}, {0}, {0});
    EXPECT_EQ(kind_of([&] { validate_map(unary, m, {0}, {2}, {1}); }), ErrorKind::MiddleNotCartesian);
    EXPECT_NO_THROW(validate_map(unary, m, {0}, {1}, {0}));
}

TEST(Compose, NodeCountsMatchBruteForce)
{
    auto polys = gen::random_polys(12, 3);
    for (std::size_t i = 0; i + 1 < polys.size(); i += 2) {
        if (!(polys[i].p0() == polys[i + 1].p0()))
            continue;
        auto c = compose(polys[i], polys[i + 1]);
        EXPECT_EQ(c.poly.p1().size(), brute_composite_nodes(polys[i], polys[i + 1]));
    }
    auto m = free_monoid_truncated(2);
    auto mm = compose(m, m);
    EXPECT_EQ(mm.poly.p1().size(), brute_composite_nodes(m, m));
    EXPECT_TRUE(mm.poly.p1().contains("(2:[1,0])"));
}

TEST(Compose, RejectsDifferentColours)
{
    auto a = identity_endofunctor(FinSet({"x"}));
    auto b = identity_endofunctor(FinSet({"y"}));
    EXPECT_EQ(kind_of([&] { compose(a, b); }), ErrorKind::ColourMismatch);
}

TEST(Compose, AssociatorIsAnIsomorphism)
{
    auto m = free_monoid_truncated(2);
    auto pq = compose(m, m);
    auto qr = compose(m, m);
    auto pq_r = compose(pq.poly, m);
    auto p_qr = compose(m, qr.poly);
    auto a = associator(pq, qr, pq_r, p_qr);
    EXPECT_TRUE(a.a1().is_bijective());
    EXPECT_TRUE(a.a2().is_bijective());
}

TEST(Isomorphism, FindsRelabelledCopies)
{
    auto p = gen::random_polys(1, 5)[0];
    std::vector<std::string> relabel;
    for (const auto& l : p.p1().labels())
        relabel.push_back("n" + l);
    auto q = make_poly(p.p0(), FinSet(relabel), p.p2(), p.s().images(), p.p().images(), p.t().images());
    EXPECT_TRUE(find_isomorphism(p, q).has_value());
    EXPECT_FALSE(find_isomorphism(p, free_monoid_truncated(5)).has_value());
}

TEST(Evaluation, CartesianMapsGiveCartesianSquares)
{
    auto t = tree_from_encoding("((||)|)");
    auto decs = decorations(t, free_monoid_truncated(2));
    ASSERT_FALSE(decs.empty());
    const auto& u = decs[0].decoration;
    FinMap x(FinSet({"a", "b"}), u.target().p0(), {0, 0});
    EXPECT_TRUE(evaluation_is_cartesian(u, x));
}

TEST(Elements, CategoryShape)
{
    auto m = free_monoid_truncated(2);
    auto el = elements_category(m);
    EXPECT_EQ(el.objects.size(), m.p0().size() + m.p1().size());
    EXPECT_EQ(el.arrows.size(), m.p1().size() + m.p2().size());
    for (std::size_t b = 0; b < m.p1().size(); ++b) {
        EXPECT_EQ(el.source(el.t_arrow(b)), el.colour_object(m.t()(b)));
        EXPECT_EQ(el.target(el.t_arrow(b)), el.node_object(b));
    }
}

TEST(Elements, SliceRoundTrip)
{
    auto m = free_monoid_truncated(3);
    for (const char* enc : {"|", "(|)", "((||)|)", "(|||)", "(()|)"}) {
        for (const auto& pt : decorations(tree_from_encoding(enc), m)) {
            auto sliced = make_sliced(pt.decoration);
            auto back = presheaf_to_slice(slice_to_presheaf(sliced));
            EXPECT_TRUE(isomorphic_over_base(sliced, back)) << enc;
        }
    }
    for (const auto& p : gen::random_polys(10, 17))
        EXPECT_TRUE(canonical_colimit_check(p));
}

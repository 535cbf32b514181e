#include <gtest/gtest.h>

#include <sstream>

#include "commands.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace poly;
using namespace poly::cli;

namespace {

const char* sample = R"(# sample document
tree T { edges: r a b c; node u : [a, b] -> r; node v : [c] -> a; }
tree S { edges: y z; node w : [z] -> y; }
tree L { edges: r a b; node u : [a] -> r; node v : [b] -> a; }
tree B2 { edges: r a b c d; node u : [a, b] -> r; node v : [c, d] -> a; }
tree Bad { edges: r a; node u : [a] -> r; node v : [r] -> a; }
poly M { edges: x; node m : [x, x] -> x; node e : [] -> x; }
coll C {
  colours: x;
  op m : (x, x) -> x;
  op t : (x, x) -> x [fixed-by: (1 0)];
}
map F : S -> T { edge y -> a; edge z -> c; }
map K : L -> S { edge r -> y; edge a -> y; edge b -> z; node u -> |y; node v -> w; }
presheaf X = nerve M;
presheaf D = double X at B2;
presheaf E = extend C;
)";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(Options opts, const std::string& input = sample)
{
    std::ostringstream out, err;
    int code = run(opts, input, out, err);
    return {code, out.str(), err.str()};
}

Options command(std::string name, std::vector<std::string> args = {})
{
    Options o;
    o.command = std::move(name);
    o.args = std::move(args);
    return o;
}

}  // namespace

TEST(Parse, RoundTripsThroughThePrinter)
{
    auto doc = parse(sample);
    EXPECT_EQ(doc.definitions.size(), 12u);
    auto printed = print(doc);
    auto again = parse(printed);
    EXPECT_TRUE(again == doc);
    EXPECT_EQ(print(again), printed);
}

TEST(Parse, QuotedLabelsRoundTrip)
{
    auto doc = parse(R"doc(poly P { edges: "(a,b)" "x y"; node "tree" : ["x y"] -> "(a,b)"; })doc");
    const auto& p = std::get<PolyDef>(doc.definitions[0]);
    EXPECT_EQ(p.edges[0], "(a,b)");
    EXPECT_EQ(p.nodes[0].name, "tree");
    EXPECT_TRUE(parse(print(doc)) == doc);
}

TEST(Parse, FixedByWithoutBrackets)
{
    auto doc = parse("coll C { colours: x; op t : (x, x) -> x fixed-by: (1 0); }");
    EXPECT_EQ(std::get<CollDef>(doc.definitions[0]).ops[0].fixed_by, (std::vector<Permutation>{{1, 0}}));
}

TEST(Parse, ErrorsCarryLocations)
{
    try {
        parse("tree T { edges: r a;\n  node u : [a -> r; }");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.where().line, 2u);
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
    }
    EXPECT_THROW(parse("tree T { edges: r; }\ntree T { edges: s; }"), ParseError);
    EXPECT_THROW(parse("map F : A -> B { }"), ParseError);
}

TEST(Parse, BuildsLibraryObjects)
{
    auto doc = parse(sample);
    auto t = build_tree(std::get<PolyDef>(*doc.find("T")));
    EXPECT_EQ(canonical_form(t), canonical_form(tree_from_encoding("((|)|)")));
    auto c = build_collection(std::get<CollDef>(*doc.find("C")));
    EXPECT_EQ(c.at(2).ops.size(), 3u);
    EXPECT_FALSE(is_flat(c));
    auto k = build_map(doc, std::get<MapDef>(*doc.find("K")));
    EXPECT_TRUE(is_surjective(k));
}

TEST(Run, ValidateExitCodes)
{
    auto ok = run_cli(command("validate", {"T"}));
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "tree: OK, 4 edges, 2 nodes, 2 leaves\n");
    auto bad = run_cli(command("validate", {"Bad"}));
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("axiom 3"), std::string::npos);
    EXPECT_EQ(run_cli(command("validate", {"Nope"})).code, 2);
    EXPECT_EQ(run_cli(command("validate", {"T"}), "tree T {").code, 2);
    EXPECT_EQ(run_cli(command("hom", {"S"})).code, 2);
}

TEST(Run, QuietPrintsNothing)
{
    auto o = command("validate", {"Bad"});
    o.quiet = true;
    auto r = run_cli(o);
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
}

TEST(Run, JsonCarriesTheSchemaVersion)
{
    auto o = command("hom", {"S", "T"});
    o.json = true;
    o.count = true;
    auto j = nlohmann::json::parse(run_cli(o).out);
    EXPECT_EQ(j["schema_version"], schema_version);
    EXPECT_EQ(j["exit_code"], 0);
    auto doc = parse(sample);
    auto s = build_tree(std::get<PolyDef>(*doc.find("S")));
    auto t = build_tree(std::get<PolyDef>(*doc.find("T")));
    EXPECT_EQ(j["result"]["count"], hom_omega(s, t).size());

    auto e = command("validate", {"Nope"});
    e.json = true;
    auto je = nlohmann::json::parse(run_cli(e).out);
    EXPECT_EQ(je["exit_code"], 2);
    EXPECT_EQ(je["error"]["kind"], "UnknownLabel");
}

TEST(Run, EnumerateTreesMatchesBruteForce)
{
    auto o = command("enumerate-trees");
    o.max_edges = 5;
    o.count = true;
    o.json = true;
    auto j = nlohmann::json::parse(run_cli(o).out);
    for (std::size_t k = 1; k <= 5; ++k)
        EXPECT_EQ(j["result"]["by_edges"][std::to_string(k)], oracle::rooted_trees(k, true).size());
    o.no_stumps = true;
    j = nlohmann::json::parse(run_cli(o).out);
    for (std::size_t k = 1; k <= 5; ++k)
        EXPECT_EQ(j["result"]["by_edges"][std::to_string(k)], oracle::rooted_trees(k, false).size());
    EXPECT_EQ(run_cli(command("enumerate-trees")).code, 2);
}

TEST(Run, VerdictCommands)
{
    auto segal = command("segal-check", {"D"});
    segal.max_edges = 5;
    EXPECT_EQ(run_cli(segal).code, 1);
    auto nerve = command("segal-check", {"X"});
    nerve.max_edges = 4;
    EXPECT_EQ(run_cli(nerve).code, 0);
    EXPECT_EQ(run_cli(command("flat-check", {"C"})).code, 1);
    auto theorem = command("nerve-theorem-check", {"M"});
    theorem.max_edges = 4;
    EXPECT_EQ(run_cli(theorem).code, 0);
    auto not_flat = command("nerve-theorem-check", {"E"});
    not_flat.max_edges = 4;
    auto r = run_cli(not_flat);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("NotFlat"), std::string::npos);
    auto monad = command("free-monad", {"M"});
    monad.max_nodes = 2;
    EXPECT_EQ(run_cli(monad).code, 0);
}

TEST(Run, TreeCalculusCommands)
{
    auto g = run_cli(command("graft", {"S", "T", "b"}));
    ASSERT_EQ(g.code, 0);
    auto grafted = build_tree(std::get<PolyDef>(parse(g.out).definitions[0]));
    EXPECT_EQ(grafted.edge_count(), 5u);
    EXPECT_EQ(run_cli(command("graft", {"S", "T", "r"})).code, 2);
    auto c = run_cli(command("contract", {"T", "a"}));
    ASSERT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("\"(v,u)\""), std::string::npos);
    EXPECT_EQ(run_cli(command("factor", {"K"})).code, 0);
    auto composite = run_cli(command("compose", {"M", "M"}));
    ASSERT_EQ(composite.code, 0);
    EXPECT_EQ(build_poly(std::get<PolyDef>(parse(composite.out).definitions[0])).p1().size(), 5u);
}

TEST(Run, ExportDot)
{
    auto r = run_cli(command("export-dot", {"T"}));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("// ", 0), 0u);
    EXPECT_NE(r.out.find("digraph \"T\""), std::string::npos);
    std::size_t arcs = 0;
    for (std::size_t at = r.out.find("->"); at != std::string::npos; at = r.out.find("->", at + 2))
        ++arcs;
    EXPECT_EQ(arcs, 4u);
    auto t = tree_from_encoding("(|)");
    EXPECT_NE(to_dot("U", t).find("shape=circle"), std::string::npos);
}

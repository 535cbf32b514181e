#include "commands.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace poly::cli {

using json = nlohmann::ordered_json;

namespace {

struct Report {
    int code = 0;
    std::vector<std::string> lines;
    json data = json::object();
};

std::string plural(std::size_t n, const char* one, const char* many)
{
    return std::to_string(n) + " " + (n == 1 ? one : many);
}

const PolyDef& need_poly(const Document& doc, const std::string& name)
{
    const auto* d = doc.find(name);
    if (!d || !std::holds_alternative<PolyDef>(*d))
        throw Error(ErrorKind::UnknownLabel, "'" + name + "' is not a poly or tree");
    return std::get<PolyDef>(*d);
}

const PolyDef& need_tree_def(const Document& doc, const std::string& name)
{
    const auto& p = need_poly(doc, name);
    if (!p.is_tree)
        throw Error(ErrorKind::InvalidArgument, "'" + name + "' is declared with poly, not tree");
    return p;
}

Tree need_tree(const Document& doc, const std::string& name)
{
    return build_tree(need_tree_def(doc, name));
}

std::size_t need_index(const FinSet& set, const std::string& label, const char* what)
{
    auto i = set.find(label);
    if (!i)
        throw Error(ErrorKind::UnknownLabel, std::string("unknown ") + what + " '" + label + "'");
    return *i;
}

void need_args(const Options& opts, std::size_t n, const char* usage)
{
    if (opts.args.size() != n)
        throw Error(ErrorKind::InvalidArgument, std::string("usage: ") + usage);
}

std::size_t need_bound(const std::optional<std::size_t>& b, const char* flag)
{
    if (!b)
        throw Error(ErrorKind::InvalidArgument, std::string(flag) + " is required");
    return *b;
}

std::string describe(const Subtree& s)
{
    const auto& t = s.ambient();
    if (s.is_trivial())
        return "|" + t.edges()[s.root()];
    std::string out = "{";
    for (std::size_t i = 0; i < s.nodes().size(); ++i)
        out += (i ? " " : "") + t.nodes()[s.nodes()[i]];
    return out + "}";
}

json subtree_json(const Subtree& s)
{
    const auto& t = s.ambient();
    json j;
    j["root"] = t.edges()[s.root()];
    j["nodes"] = json::array();
    for (auto b : s.nodes())
        j["nodes"].push_back(t.nodes()[b]);
    j["leaves"] = json::array();
    for (auto l : s.leaves())
        j["leaves"].push_back(t.edges()[l]);
    return j;
}

std::string describe(const OmegaMorphism& phi)
{
    const auto& s = phi.source();
    const auto& t = phi.target();
    std::string out;
    for (std::size_t x = 0; x < s.edge_count(); ++x)
        out += (x ? ", " : "") + s.edges()[x] + "->" + t.edges()[phi.edge_map()[x]];
    for (std::size_t b = 0; b < s.node_count(); ++b)
        out += "; " + s.nodes()[b] + "->" + describe(phi.node_images()[b]);
    return out;
}

json morphism_json(const OmegaMorphism& phi)
{
    const auto& s = phi.source();
    const auto& t = phi.target();
    json j;
    j["edges"] = json::object();
    for (std::size_t x = 0; x < s.edge_count(); ++x)
        j["edges"][s.edges()[x]] = t.edges()[phi.edge_map()[x]];
    j["nodes"] = json::object();
    for (std::size_t b = 0; b < s.node_count(); ++b)
        j["nodes"][s.nodes()[b]] = subtree_json(phi.node_images()[b]);
    return j;
}

json tree_json(const Tree& t)
{
    json j;
    j["edges"] = t.edges().labels();
    j["nodes"] = t.nodes().labels();
    j["root"] = t.edges()[t.root()];
    j["leaves"] = json::array();
    for (auto l : t.leaves())
        j["leaves"].push_back(t.edges()[l]);
    j["canonical_form"] = canonical_form(t);
    return j;
}

void add_tree(Report& r, const std::string& name, const Tree& t)
{
    std::istringstream in(print(poly_to_def(name, t.poly(), true)));
    for (std::string line; std::getline(in, line);)
        r.lines.push_back(line);
    r.data["tree"] = tree_json(t);
}

SiteKind site_kind(const std::string& s)
{
    if (s == "temb")
        return SiteKind::TEmb;
    if (s == "tree")
        return SiteKind::Tree;
    if (s == "planar")
        return SiteKind::Planar;
    throw Error(ErrorKind::InvalidArgument, "unknown site '" + s + "'");
}

std::size_t edges_bound(const Options& opts)
{
    return opts.max_edges.value_or(5);
}

// Presheaf named directly, or the nerve of a poly or tree.
FinitePresheaf need_presheaf(const Document& doc, const std::string& name, const Options& opts)
{
    const auto* d = doc.find(name);
    if (!d)
        throw Error(ErrorKind::UnknownLabel, "unknown name '" + name + "'");
    auto kind = site_kind(opts.site);
    if (const auto* p = std::get_if<PolyDef>(d))
        return nerve_N0(build_poly(*p), make_site(kind, edges_bound(opts)));
    if (const auto* x = std::get_if<PresheafDef>(d))
        return build_presheaf(doc, *x, make_site(kind, edges_bound(opts)));
    throw Error(ErrorKind::InvalidArgument, "'" + name + "' is not a presheaf, poly or tree");
}

std::string perm_text(const Permutation& p)
{
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i)
        out += (i ? " " : "") + std::to_string(p[i]);
    return out + ")";
}

Report cmd_validate(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "validate NAME");
    Report r;
    const auto* d = doc.find(opts.args[0]);
    if (!d)
        throw Error(ErrorKind::UnknownLabel, "unknown name '" + opts.args[0] + "'");
    if (const auto* p = std::get_if<PolyDef>(d)) {
        auto poly = build_poly(*p);
        if (!p->is_tree) {
            r.lines.push_back("poly: OK, " + plural(poly.p0().size(), "colour", "colours") + ", " +
                              plural(poly.p1().size(), "node", "nodes") + ", " +
                              plural(poly.p2().size(), "input", "inputs"));
            r.data["kind"] = "poly";
            r.data["ok"] = true;
            return r;
        }
        r.data["kind"] = "tree";
        try {
            auto t = certify_tree(poly);
            r.lines.push_back("tree: OK, " + plural(t.edge_count(), "edge", "edges") + ", " +
                              plural(t.node_count(), "node", "nodes") + ", " +
                              plural(t.leaf_count(), "leaf", "leaves"));
            r.data["ok"] = true;
            r.data["edges"] = t.edge_count();
            r.data["nodes"] = t.node_count();
            r.data["leaves"] = t.leaf_count();
        } catch (const TreeAxiomError& e) {
            r.code = 1;
            r.lines.push_back(std::string("tree: FAIL, ") + e.what());
            r.data["ok"] = false;
            r.data["axiom"] = e.axiom();
            r.data["error"] = to_string(e.kind());
        }
        return r;
    }
    if (const auto* c = std::get_if<CollDef>(d)) {
        auto coll = build_collection(*c);
        std::string arities;
        for (const auto& [n, a] : coll.arities())
            arities += " " + std::to_string(n) + ":" + std::to_string(a.ops.size());
        r.lines.push_back("collection: OK, " + plural(coll.colours().size(), "colour", "colours") + ", ops by arity" +
                          (arities.empty() ? " none" : arities));
        r.data["kind"] = "collection";
        r.data["ok"] = true;
        return r;
    }
    if (const auto* m = std::get_if<MapDef>(d)) {
        r.data["kind"] = "map";
        try {
            auto phi = build_map(doc, *m);
            r.lines.push_back("map: OK, " + m->source + " -> " + m->target);
            r.lines.push_back(std::string("free: ") + (is_free(phi) ? "yes" : "no") +
                              ", boundary-preserving: " + (is_boundary_preserving(phi) ? "yes" : "no") +
                              ", injective: " + (is_injective(phi) ? "yes" : "no") +
                              ", surjective: " + (is_surjective(phi) ? "yes" : "no"));
            r.data["ok"] = true;
            r.data["free"] = is_free(phi);
            r.data["boundary_preserving"] = is_boundary_preserving(phi);
            r.data["injective"] = is_injective(phi);
            r.data["surjective"] = is_surjective(phi);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotATreeMorphism && e.kind() != ErrorKind::NotASubtree)
                throw;
            r.code = 1;
            r.lines.push_back(std::string("map: FAIL, ") + e.what());
            r.data["ok"] = false;
            r.data["error"] = e.what();
        }
        return r;
    }
    const auto& x = std::get<PresheafDef>(*d);
    r.data["kind"] = "presheaf";
    try {
        auto ps = build_presheaf(doc, x, make_site(site_kind(opts.site), edges_bound(opts)));
        std::size_t total = 0;
        for (const auto& v : ps.values())
            total += v.size();
        r.lines.push_back("presheaf: OK, " + plural(ps.values().size(), "object", "objects") + ", " +
                          plural(total, "element", "elements"));
        r.data["ok"] = true;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotAFunctor)
            throw;
        r.code = 1;
        r.lines.push_back(std::string("presheaf: FAIL, ") + e.what());
        r.data["ok"] = false;
    }
    return r;
}

Report cmd_subtrees(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "subtrees TREE");
    auto t = need_tree(doc, opts.args[0]);
    auto subs = enumerate_subtrees(t);
    Report r;
    r.data["count"] = subs.size();
    if (opts.count) {
        r.lines.push_back(std::to_string(subs.size()));
        return r;
    }
    r.data["subtrees"] = json::array();
    for (const auto& s : subs) {
        std::string leaves;
        for (auto l : s.leaves())
            leaves += " " + t.edges()[l];
        r.lines.push_back(describe(s) + " root " + t.edges()[s.root()] + " leaves" + (leaves.empty() ? " none" : leaves));
        r.data["subtrees"].push_back(subtree_json(s));
    }
    return r;
}

Report cmd_graft(const Document& doc, const Options& opts)
{
    need_args(opts, 3, "graft S T LEAF_OF_T");
    auto s = need_tree(doc, opts.args[0]);
    auto t = need_tree(doc, opts.args[1]);
    auto g = graft(s, t, need_index(t.edges(), opts.args[2], "edge"));
    Report r;
    add_tree(r, opts.args[0] + "_on_" + opts.args[1], g.tree);
    return r;
}

Report cmd_prune(const Document& doc, const Options& opts)
{
    need_args(opts, 2, "prune TREE EDGE");
    auto t = need_tree(doc, opts.args[0]);
    auto s = prune(t, need_index(t.edges(), opts.args[1], "edge"));
    Report r;
    add_tree(r, opts.args[0] + "_pruned", s.tree());
    return r;
}

Report cmd_contract(const Document& doc, const Options& opts)
{
    need_args(opts, 2, "contract TREE EDGE");
    auto t = need_tree(doc, opts.args[0]);
    auto c = contract(t, need_index(t.edges(), opts.args[1], "edge"));
    Report r;
    add_tree(r, opts.args[0] + "_contracted", c.tree);
    r.data["map"] = morphism_json(c.map);
    return r;
}

Report cmd_hom(const Document& doc, const Options& opts)
{
    need_args(opts, 2, "hom S T");
    auto s = need_tree(doc, opts.args[0]);
    auto t = need_tree(doc, opts.args[1]);
    std::vector<OmegaMorphism> maps;
    if (opts.embeddings) {
        for (const auto& e : hom_temb(s, t))
            maps.push_back(omega_from_embedding(s, t, e));
    } else {
        maps = hom_omega(s, t);
    }
    Report r;
    r.data["category"] = opts.embeddings ? "temb" : "tree";
    r.data["count"] = maps.size();
    if (opts.count) {
        r.lines.push_back(std::to_string(maps.size()));
        return r;
    }
    r.data["morphisms"] = json::array();
    for (const auto& phi : maps) {
        r.lines.push_back(describe(phi));
        r.data["morphisms"].push_back(morphism_json(phi));
    }
    return r;
}

Report cmd_factor(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "factor MAP");
    const auto* d = doc.find(opts.args[0]);
    if (!d || !std::holds_alternative<MapDef>(*d))
        throw Error(ErrorKind::InvalidArgument, "'" + opts.args[0] + "' is not a map");
    auto phi = build_map(doc, std::get<MapDef>(*d));
    auto f = triple_factor(phi);
    Report r;
    r.lines.push_back("surjection: " + describe(f.surjection));
    r.lines.push_back("boundary-preserving injection: " + describe(f.boundary_preserving_injection));
    r.lines.push_back("free: " + describe(f.free));
    add_tree(r, "first_middle", f.first_middle);
    add_tree(r, "second_middle", f.second_middle);
    r.data.erase("tree");
    r.data["first_middle"] = tree_json(f.first_middle);
    r.data["second_middle"] = tree_json(f.second_middle);
    r.data["surjection"] = morphism_json(f.surjection);
    r.data["boundary_preserving_injection"] = morphism_json(f.boundary_preserving_injection);
    r.data["free"] = morphism_json(f.free);
    return r;
}

Report cmd_enumerate_trees(const Options& opts)
{
    need_args(opts, 0, "enumerate-trees --max-edges N");
    std::size_t n = need_bound(opts.max_edges, "--max-edges");
    auto enc = undecorated_encodings(n, opts.no_stumps ? Stumps::Exclude : Stumps::Include);
    Report r;
    r.data["stumps"] = !opts.no_stumps;
    r.data["by_edges"] = json::object();
    for (std::size_t k = 1; k < enc.size(); ++k) {
        r.data["by_edges"][std::to_string(k)] = opts.count ? json(enc[k].size()) : json(enc[k]);
        std::string line = std::to_string(k) + " edges: " + std::to_string(enc[k].size());
        if (!opts.count)
            for (const auto& e : enc[k])
                line += " " + e;
        r.lines.push_back(line);
    }
    return r;
}

Report cmd_enumerate_ptrees(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "enumerate-ptrees POLY (--max-nodes N | --max-edges N)");
    if (!opts.max_nodes && !opts.max_edges)
        throw Error(ErrorKind::InvalidArgument, "--max-nodes or --max-edges is required");
    auto p = build_poly(need_poly(doc, opts.args[0]));
    PTreeBounds bounds;
    bounds.max_nodes = opts.max_nodes.value_or(npos);
    bounds.max_edges = opts.max_edges.value_or(npos);
    bounds.stumps = opts.no_stumps ? Stumps::Exclude : Stumps::Include;
    auto w = enumerate_ptrees(p, bounds);
    Report r;
    r.data["count"] = w.size();
    std::map<std::size_t, std::size_t> by_nodes;
    for (const auto& c : w.classes())
        ++by_nodes[c.nodes];
    r.data["by_nodes"] = json::object();
    for (auto [k, n] : by_nodes)
        r.data["by_nodes"][std::to_string(k)] = n;
    r.lines.push_back(std::to_string(w.size()) + " classes");
    if (opts.count)
        return r;
    r.data["classes"] = json::array();
    for (const auto& c : w.classes()) {
        r.lines.push_back(c.code + " colour " + p.p0()[c.colour] + " nodes " + std::to_string(c.nodes) + " edges " +
                          std::to_string(c.edges));
        r.data["classes"].push_back({{"code", c.code}, {"colour", p.p0()[c.colour]}, {"nodes", c.nodes}, {"edges", c.edges}});
    }
    return r;
}

Report cmd_automorphisms(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "automorphisms TREE");
    auto t = need_tree(doc, opts.args[0]);
    auto autos = automorphisms(t);
    Report r;
    r.data["count"] = autos.size();
    if (opts.count) {
        r.lines.push_back(std::to_string(autos.size()));
        return r;
    }
    for (const auto& a : autos)
        r.lines.push_back(describe(omega_from_embedding(t, t, a)));
    return r;
}

Report cmd_free_monad(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "free-monad NAME [--max-nodes N]");
    const auto& def = need_poly(doc, opts.args[0]);
    auto m = def.is_tree ? free_monad(build_tree(def)) : free_monad(build_poly(def), need_bound(opts.max_nodes, "--max-nodes"));
    auto laws = check_monad_laws(m);
    Report r;
    r.code = laws.ok() ? 0 : 1;
    r.lines.push_back(std::string("carrier: ") + plural(m.carrier().p1().size(), "node", "nodes") + ", " +
                      plural(m.carrier().p2().size(), "input", "inputs") + (m.exact() ? ", exact" : ", truncated"));
    r.lines.push_back(std::string("left unit: ") + (laws.left_unit ? "holds" : "FAILS") +
                      ", right unit: " + (laws.right_unit ? "holds" : "FAILS") +
                      ", associativity: " + (laws.associativity ? "holds" : "FAILS"));
    r.data["carrier_nodes"] = m.carrier().p1().size();
    r.data["carrier_inputs"] = m.carrier().p2().size();
    r.data["exact"] = m.exact();
    r.data["left_unit"] = laws.left_unit;
    r.data["right_unit"] = laws.right_unit;
    r.data["associativity"] = laws.associativity;
    r.data["checked"] = laws.checked;
    return r;
}

Report cmd_compose(const Document& doc, const Options& opts)
{
    need_args(opts, 2, "compose P Q");
    auto p = build_poly(need_poly(doc, opts.args[0]));
    auto q = build_poly(need_poly(doc, opts.args[1]));
    auto c = compose(p, q);
    Report r;
    std::istringstream in(print(poly_to_def(opts.args[0] + "_" + opts.args[1], c.poly, false)));
    for (std::string line; std::getline(in, line);)
        r.lines.push_back(line);
    r.data["nodes"] = c.poly.p1().labels();
    r.data["inputs"] = c.poly.p2().labels();
    return r;
}

Report cmd_nerve(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "nerve NAME");
    auto x = need_presheaf(doc, opts.args[0], opts);
    Report r;
    r.data["site"] = opts.site;
    r.data["max_edges"] = x.max_edges();
    r.data["values"] = json::object();
    for (std::size_t o = 0; o < x.values().size(); ++o) {
        const auto& code = x.site()->codes()[o];
        r.lines.push_back(code + " " + std::to_string(x.value(o).size()));
        r.data["values"][code] = opts.count ? json(x.value(o).size()) : json(x.value(o).labels());
    }
    return r;
}

Report cmd_segal(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "segal-check NAME");
    auto x = need_presheaf(doc, opts.args[0], opts);
    auto s = segal_check(x);
    Report r;
    r.code = s.ok ? 0 : 1;
    r.data["ok"] = s.ok;
    r.data["checked"] = s.checked;
    if (s.ok) {
        r.lines.push_back("segal: OK, " + plural(s.checked, "tree", "trees") + " checked");
        return r;
    }
    const auto& w = *s.witness;
    const auto& code = x.site()->codes()[w.object];
    r.lines.push_back("segal: FAIL at tree " + code + ": " + std::to_string(w.value_size) + " elements, " +
                      std::to_string(w.families) + " compatible families" + (w.injective ? "" : ", comparison not injective"));
    r.data["witness"] = {{"tree", code}, {"elements", w.value_size}, {"families", w.families}, {"injective", w.injective}};
    return r;
}

Report cmd_flat(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "flat-check NAME");
    const auto* d = doc.find(opts.args[0]);
    if (!d)
        throw Error(ErrorKind::UnknownLabel, "unknown name '" + opts.args[0] + "'");
    auto c = std::holds_alternative<CollDef>(*d) ? build_collection(std::get<CollDef>(*d))
                                                 : restrict_to_elementary(need_presheaf(doc, opts.args[0], opts));
    auto w = flatness_witness(c);
    Report r;
    r.code = w ? 1 : 0;
    r.data["flat"] = !w;
    if (!w) {
        r.lines.push_back("flat: OK");
        return r;
    }
    const auto& label = c.at(w->arity).ops[w->element];
    r.lines.push_back("flat: FAIL, element " + label + " of arity " + std::to_string(w->arity) + " is fixed by " +
                      perm_text(w->stabiliser));
    r.data["witness"] = {{"arity", w->arity}, {"element", label}, {"stabiliser", w->stabiliser}};
    return r;
}

Report cmd_nerve_theorem(const Document& doc, const Options& opts)
{
    need_args(opts, 1, "nerve-theorem-check NAME");
    auto x = need_presheaf(doc, opts.args[0], opts);
    auto n = nerve_theorem_check(x);
    Report r;
    bool ok = n.verdict == NerveVerdict::IsPolynomialMonadNerve && n.nerve_matches;
    r.code = ok ? 0 : 1;
    r.lines.push_back(std::string("verdict: ") + to_string(n.verdict));
    r.data["verdict"] = to_string(n.verdict);
    r.data["nerve_matches"] = n.nerve_matches;
    if (n.segal.witness)
        r.lines.push_back("segal witness: tree " + x.site()->codes()[n.segal.witness->object]);
    if (n.flat_witness)
        r.lines.push_back("flatness witness: arity " + std::to_string(n.flat_witness->arity) + " fixed by " +
                          perm_text(n.flat_witness->stabiliser));
    if (n.reconstructed) {
        std::istringstream in(print(poly_to_def("reconstructed", *n.reconstructed, false)));
        for (std::string line; std::getline(in, line);)
            r.lines.push_back(line);
        r.data["reconstructed_nodes"] = n.reconstructed->p1().size();
    }
    return r;
}

Report cmd_export_dot(const Document& doc, const Options& opts)
{
    std::vector<std::string> names = opts.args;
    if (names.empty())
        for (const auto& d : doc.definitions)
            if (const auto* p = std::get_if<PolyDef>(&d); p && p->is_tree)
                names.push_back(p->name);
    std::string text = "// Planarity of the drawing carries no semantics.\n";
    for (const auto& n : names)
        text += to_dot(n, need_tree(doc, n));
    Report r;
    if (!opts.out_path.empty()) {
        std::ofstream f(opts.out_path);
        if (!f)
            throw Error(ErrorKind::InvalidArgument, "cannot write " + opts.out_path);
        f << text;
        r.lines.push_back("wrote " + plural(names.size(), "graph", "graphs") + " to " + opts.out_path);
    } else {
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);)
            r.lines.push_back(line);
    }
    r.data["graphs"] = names.size();
    return r;
}

std::string dot_id(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_dot(const std::string& name, const Tree& t)
{
    std::ostringstream out;
    out << "digraph " << dot_id(name) << " {\n";
    out << "  node [shape=circle];\n";
    for (std::size_t b = 0; b < t.node_count(); ++b)
        out << "  " << dot_id("n:" + t.nodes()[b]) << " [label=" << dot_id(t.nodes()[b]) << "];\n";
    for (auto l : t.leaves())
        out << "  " << dot_id("leaf:" + t.edges()[l]) << " [shape=point];\n";
    out << "  " << dot_id("root:" + t.edges()[t.root()]) << " [shape=point];\n";
    for (std::size_t x = 0; x < t.edge_count(); ++x) {
        std::size_t up = t.producer(x);
        std::size_t down = t.consuming_node(x);
        std::string tail = up == npos ? "leaf:" + t.edges()[x] : "n:" + t.nodes()[up];
        std::string head = down == npos ? "root:" + t.edges()[x] : "n:" + t.nodes()[down];
        out << "  " << dot_id(tail) << " -> " << dot_id(head) << " [label=" << dot_id(t.edges()[x]) << "];\n";
    }
    out << "}\n";
    return out.str();
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = {
        "validate", "subtrees", "graft", "prune", "contract", "hom", "factor", "enumerate-trees", "enumerate-ptrees",
        "automorphisms", "free-monad", "compose", "nerve", "segal-check", "flat-check", "nerve-theorem-check",
        "export-dot"};
    return names;
}

int run(const Options& opts, const std::string& input, std::ostream& out, std::ostream& err)
{
    static const std::map<std::string, std::function<Report(const Document&, const Options&)>> table = {
        {"validate", cmd_validate},
        {"subtrees", cmd_subtrees},
        {"graft", cmd_graft},
        {"prune", cmd_prune},
        {"contract", cmd_contract},
        {"hom", cmd_hom},
        {"factor", cmd_factor},
        {"enumerate-trees", [](const Document&, const Options& o) { return cmd_enumerate_trees(o); }},
        {"enumerate-ptrees", cmd_enumerate_ptrees},
        {"automorphisms", cmd_automorphisms},
        {"free-monad", cmd_free_monad},
        {"compose", cmd_compose},
        {"nerve", cmd_nerve},
        {"segal-check", cmd_segal},
        {"flat-check", cmd_flat},
        {"nerve-theorem-check", cmd_nerve_theorem},
        {"export-dot", cmd_export_dot},
    };
    Report r;
    json envelope;
    envelope["schema_version"] = schema_version;
    envelope["command"] = opts.command;
    envelope["args"] = opts.args;
    try {
        auto it = table.find(opts.command);
        if (it == table.end())
            throw Error(ErrorKind::InvalidArgument, "unknown command '" + opts.command + "'");
        auto doc = parse(input);
        r = it->second(doc, opts);
    } catch (const Error& e) {
        r = Report{};
        r.code = 2;
        envelope["exit_code"] = 2;
        envelope["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
        if (opts.json)
            out << envelope.dump(2) << "\n";
        else if (!opts.quiet)
            err << "error: " << e.what() << "\n";
        return 2;
    }
    envelope["exit_code"] = r.code;
    envelope["result"] = r.data;
    if (opts.json) {
        out << envelope.dump(2) << "\n";
    } else if (!opts.quiet) {
        for (const auto& line : r.lines)
            out << line << "\n";
    }
    return r.code;
}

}  // namespace poly::cli

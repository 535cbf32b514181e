#include "polytree/ptree.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace poly {

std::vector<PTree> decorations(const Tree& t, const PolyEndo& p)
{
    if (auto bound = p.arity_bound())
        for (std::size_t c = 0; c < t.node_count(); ++c)
            if (t.poly().arity(c) > *bound)
                throw Error(ErrorKind::ArityUnsupported, "node " + t.nodes()[c] + " has arity " +
                                                             std::to_string(t.poly().arity(c)) +
                                                             " above the truncation bound " + std::to_string(*bound));
    std::vector<PTree> out;
    if (t.is_trivial()) {
        for (std::size_t i = 0; i < p.p0().size(); ++i)
            out.push_back({t, validate_map(t.poly(), p, {i}, {}, {})});
        return out;
    }
    std::vector<std::size_t> col(t.edge_count(), npos), a1(t.node_count()), a2(t.marked().size());
    std::vector<std::vector<std::size_t>> by_arity;
    for (std::size_t b = 0; b < p.p1().size(); ++b) {
        if (by_arity.size() <= p.arity(b))
            by_arity.resize(p.arity(b) + 1);
        by_arity[p.arity(b)].push_back(b);
    }
    // Nodes root first so that output colours are fixed before inputs.
    std::vector<std::size_t> order;
    std::function<void(std::size_t)> walk = [&](std::size_t x) {
        std::size_t c = t.producer(x);
        if (c == npos)
            return;
        order.push_back(c);
        for (auto y : t.inputs(c))
            walk(y);
    };
    walk(t.root());

    std::function<void(std::size_t)> node_step;
    std::function<void(std::size_t, std::size_t, std::vector<bool>&)> input_step;
    auto assign = [&](std::size_t x, std::size_t c, std::vector<std::size_t>& undo) {
        if (col[x] == npos) {
            col[x] = c;
            undo.push_back(x);
            return true;
        }
        return col[x] == c;
    };
    node_step = [&](std::size_t k) {
        if (k == order.size()) {
            out.push_back({t, validate_map(t.poly(), p, col, a1, a2)});
            return;
        }
        std::size_t c = order[k];
        std::size_t n = t.poly().arity(c);
        if (n >= by_arity.size())
            return;
        for (auto b : by_arity[n]) {
            std::vector<std::size_t> undo;
            if (assign(t.output(c), p.t()(b), undo)) {
                a1[c] = b;
                std::vector<bool> used(n, false);
                input_step(k, 0, used);
            }
            for (auto x : undo)
                col[x] = npos;
        }
    };
    input_step = [&](std::size_t k, std::size_t i, std::vector<bool>& used) {
        std::size_t c = order[k];
        const auto& fc = t.poly().fibre(c);
        if (i == fc.size()) {
            node_step(k + 1);
            return;
        }
        const auto& fb = p.fibre(a1[c]);
        for (std::size_t j = 0; j < fb.size(); ++j) {
            if (used[j])
                continue;
            std::vector<std::size_t> undo;
            if (assign(t.poly().s()(fc[i]), p.s()(fb[j]), undo)) {
                used[j] = true;
                a2[fc[i]] = fb[j];
                input_step(k, i + 1, used);
                used[j] = false;
            }
            for (auto x : undo)
                col[x] = npos;
        }
    };
    node_step(0);
    return out;
}

std::size_t automorphisms_over_base(const PTree& pt)
{
    std::size_t count = 0;
    const auto& d = pt.decoration;
    for (auto& a : automorphisms(pt.tree)) {
        bool over = true;
        for (std::size_t x = 0; over && x < pt.tree.edge_count(); ++x)
            over = d.a0()(a.a0()(x)) == d.a0()(x);
        for (std::size_t b = 0; over && b < pt.tree.node_count(); ++b)
            over = d.a1()(a.a1()(b)) == d.a1()(b);
        for (std::size_t e = 0; over && e < pt.tree.marked().size(); ++e)
            over = d.a2()(a.a2()(e)) == d.a2()(e);
        if (over)
            ++count;
    }
    return count;
}

bool is_rigid(const PTree& pt)
{
    return automorphisms_over_base(pt) == 1;
}

std::string ptree_canonical_form(const PTree& pt)
{
    const auto& t = pt.tree;
    const auto& d = pt.decoration;
    const auto& base = d.target();
    std::function<std::string(std::size_t)> enc = [&](std::size_t x) -> std::string {
        std::size_t c = t.producer(x);
        if (c == npos)
            return "|" + std::to_string(d.a0()(x));
        std::size_t b = d.a1()(c);
        std::vector<std::string> kids(base.arity(b));
        for (auto m : t.poly().fibre(c))
            kids[base.position(d.a2()(m))] = enc(t.poly().s()(m));
        std::string out = "<" + std::to_string(b) + ">(";
        for (std::size_t i = 0; i < kids.size(); ++i)
            out += (i ? "," : "") + kids[i];
        return out + ")";
    };
    return enc(t.root());
}

PTreeClassSet::PTreeClassSet(PolyEndo base, PTreeBounds bounds, std::vector<PTreeClass> classes)
    : base_(std::move(base)), bounds_(bounds), classes_(std::move(classes)), trivial_(base_.p0().size(), npos)
{
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        index_.emplace(classes_[i].code, i);
        if (classes_[i].node == npos)
            trivial_[classes_[i].colour] = i;
    }
}

std::size_t PTreeClassSet::find(const std::string& code) const
{
    auto it = index_.find(code);
    return it == index_.end() ? npos : it->second;
}

namespace {

std::string node_code(std::size_t b, const std::vector<std::string>& kids)
{
    std::string out = "<" + std::to_string(b) + ">(";
    for (std::size_t i = 0; i < kids.size(); ++i)
        out += (i ? "," : "") + kids[i];
    return out + ")";
}

}  // namespace

std::size_t PTreeClassSet::find_node(std::size_t b, const std::vector<std::size_t>& children) const
{
    std::vector<std::string> kids;
    for (auto c : children)
        kids.push_back(classes_[c].code);
    return find(node_code(b, kids));
}

PTree PTreeClassSet::materialize(std::size_t i) const
{
    std::vector<std::string> edges, nodes, marked;
    std::vector<std::size_t> s, p, t, a0, a1, a2;
    std::function<std::size_t(std::size_t, const std::string&)> build = [&](std::size_t k, const std::string& path) {
        const auto& cls = classes_[k];
        std::size_t x = edges.size();
        edges.push_back("r" + path);
        a0.push_back(cls.colour);
        if (cls.node == npos)
            return x;
        std::size_t c = nodes.size();
        nodes.push_back("v" + path);
        a1.push_back(cls.node);
        t.push_back(x);
        const auto& fib = base_.fibre(cls.node);
        for (std::size_t j = 0; j < fib.size(); ++j) {
            std::string sub = path + "." + std::to_string(j);
            std::size_t m = marked.size();
            marked.push_back("i" + sub);
            a2.push_back(fib[j]);
            p.push_back(c);
            s.push_back(0);
            s[m] = build(cls.children[j], sub);
        }
        return x;
    };
    build(i, "");
    auto tree = certify_tree(make_poly(FinSet(edges), FinSet(nodes), FinSet(marked), s, p, t));
    return {tree, validate_map(tree.poly(), base_, a0, a1, a2)};
}

namespace {

struct FixpointStep {
    const PolyEndo& p;
    const PTreeBounds& bounds;
    std::vector<PTreeClass>& classes;
    std::map<std::string, std::size_t>& index;

    // One (1+P) round over a snapshot of the current classes; returns the number of new classes.
    std::size_t run()
    {
        std::size_t snapshot = classes.size();
        std::vector<std::vector<std::size_t>> by_colour(p.p0().size());
        for (std::size_t k = 0; k < snapshot; ++k)
            by_colour[classes[k].colour].push_back(k);
        std::size_t added = 0;
        for (std::size_t b = 0; b < p.p1().size(); ++b) {
            const auto& fib = p.fibre(b);
            if (fib.empty() && bounds.stumps == Stumps::Exclude)
                continue;
            std::vector<std::size_t> f(fib.size());
            std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t nodes,
                                                                                 std::size_t edges) {
                if (i == fib.size()) {
                    add(b, f, nodes, edges, added);
                    return;
                }
                std::size_t rest = fib.size() - i - 1;
                for (auto k : by_colour[p.s()(fib[i])]) {
                    std::size_t n2 = nodes + classes[k].nodes;
                    std::size_t e2 = edges + classes[k].edges;
                    if (n2 > bounds.max_nodes || e2 + rest > bounds.max_edges)
                        continue;
                    f[i] = k;
                    rec(i + 1, n2, e2);
                }
            };
            if (1 <= bounds.max_nodes && 1 + fib.size() <= bounds.max_edges)
                rec(0, 1, 1);
        }
        return added;
    }

    void add(std::size_t b, const std::vector<std::size_t>& f, std::size_t nodes, std::size_t edges,
             std::size_t& added)
    {
        std::vector<std::string> kids;
        for (auto k : f)
            kids.push_back(classes[k].code);
        auto code = node_code(b, kids);
        if (index.count(code))
            return;
        PTreeClass cls;
        cls.code = code;
        cls.colour = p.t()(b);
        cls.node = b;
        cls.children = f;
        cls.nodes = nodes;
        cls.edges = edges;
        for (auto k : f)
            cls.leaf_colours.insert(cls.leaf_colours.end(), classes[k].leaf_colours.begin(),
                                    classes[k].leaf_colours.end());
        index.emplace(code, classes.size());
        classes.push_back(std::move(cls));
        ++added;
    }
};

std::vector<PTreeClass> trivial_classes(const PolyEndo& p)
{
    std::vector<PTreeClass> out;
    for (std::size_t i = 0; i < p.p0().size(); ++i) {
        PTreeClass cls;
        cls.code = "|" + std::to_string(i);
        cls.colour = i;
        cls.leaf_colours = {i};
        out.push_back(std::move(cls));
    }
    return out;
}

}  // namespace

PTreeClassSet enumerate_ptrees(const PolyEndo& p, PTreeBounds bounds)
{
    if (bounds.max_nodes == npos && bounds.max_edges == npos)
        throw Error(ErrorKind::InvalidArgument, "enumeration of tr(P) needs a node or edge bound");
    std::vector<PTreeClass> classes;
    if (bounds.max_edges >= 1)
        classes = trivial_classes(p);
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < classes.size(); ++k)
        index.emplace(classes[k].code, k);
    FixpointStep step{p, bounds, classes, index};
    while (step.run() > 0) {
    }

    // Canonical order: nodes, then edges, then code; children indices are remapped.
    std::vector<std::size_t> order(classes.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = classes[a];
        const auto& y = classes[b];
        if (x.nodes != y.nodes)
            return x.nodes < y.nodes;
        if (x.edges != y.edges)
            return x.edges < y.edges;
        return x.code < y.code;
    });
    std::vector<std::size_t> rank(order.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        rank[order[k]] = k;
    std::vector<PTreeClass> sorted;
    sorted.reserve(order.size());
    for (auto k : order) {
        auto cls = classes[k];
        for (auto& c : cls.children)
            c = rank[c];
        sorted.push_back(std::move(cls));
    }
    return PTreeClassSet(p, bounds, std::move(sorted));
}

bool verify_lambek(const PTreeClassSet& w)
{
    auto classes = w.classes();
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < classes.size(); ++k)
        index.emplace(classes[k].code, k);
    auto bounds = w.bounds();
    FixpointStep step{w.base(), bounds, classes, index};
    if (step.run() != 0)
        return false;
    for (std::size_t k = 0; k < w.size(); ++k) {
        auto pt = w.materialize(k);
        if (ptree_canonical_form(pt) != w[k].code)
            return false;
        auto d = recursive_decompose(pt.tree);
        if (d.trivial) {
            if (w[k].node != npos || pt.decoration.a0()(d.edge) != w[k].colour)
                return false;
            continue;
        }
        if (pt.decoration.a1()(d.node) != w[k].node)
            return false;
        const auto& base = w.base();
        std::vector<std::size_t> kids(base.arity(w[k].node), npos);
        for (auto& [e, sub] : d.branches) {
            auto incl = sub.inclusion();
            PTree branch{sub.tree(), compose(pt.decoration, incl)};
            kids[base.position(pt.decoration.a2()(e))] = w.find(ptree_canonical_form(branch));
        }
        if (kids != w[k].children)
            return false;
    }
    return true;
}

std::vector<std::vector<std::string>> undecorated_encodings(std::size_t max_edges, Stumps stumps)
{
    std::vector<std::vector<std::string>> by_edges(max_edges + 1);
    if (max_edges == 0)
        return by_edges;
    by_edges[1].push_back("|");
    if (stumps == Stumps::Include)
        by_edges[1].push_back("()");
    for (std::size_t n = 2; n <= max_edges; ++n) {
        std::set<std::string> found;
        // Children as a non-decreasing sequence of (edge count, index) summing to n - 1.
        std::vector<std::string> kids;
        std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t min_size,
                                                                             std::size_t min_index) {
            if (left == 0) {
                auto sorted = kids;
                std::sort(sorted.begin(), sorted.end());
                std::string code = "(";
                for (auto& k : sorted)
                    code += k;
                found.insert(code + ")");
                return;
            }
            for (std::size_t sz = min_size; sz <= left; ++sz)
                for (std::size_t i = (sz == min_size ? min_index : 0); i < by_edges[sz].size(); ++i) {
                    kids.push_back(by_edges[sz][i]);
                    rec(left - sz, sz, i);
                    kids.pop_back();
                }
        };
        rec(n - 1, 1, 0);
        by_edges[n].assign(found.begin(), found.end());
    }
    for (auto& v : by_edges)
        std::sort(v.begin(), v.end());
    return by_edges;
}

std::vector<Tree> undecorated_tree_classes(std::size_t max_edges, Stumps stumps)
{
    std::vector<Tree> out;
    for (auto& group : undecorated_encodings(max_edges, stumps))
        for (auto& code : group)
            out.push_back(tree_from_encoding(code));
    return out;
}

}  // namespace poly

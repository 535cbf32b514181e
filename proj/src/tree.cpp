#include "polytree/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace poly {

std::size_t Tree::consuming_node(std::size_t x) const
{
    std::size_t m = consumer(x);
    return m == npos ? npos : poly().p()(m);
}

std::vector<std::size_t> Tree::inner_edges() const
{
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < edge_count(); ++x)
        if (is_inner(x))
            out.push_back(x);
    return out;
}

bool Tree::leq(std::size_t x, std::size_t y) const
{
    if (depth(x) < depth(y))
        return false;
    while (depth(x) > depth(y))
        x = sigma()(x);
    return x == y;
}

std::size_t Tree::distance(std::size_t x, std::size_t y) const
{
    if (!comparable(x, y))
        throw Error(ErrorKind::DistanceUndefined, edges()[x] + " and " + edges()[y] + " are incomparable");
    return depth(x) > depth(y) ? depth(x) - depth(y) : depth(y) - depth(x);
}

std::size_t Tree::join(std::size_t x, std::size_t y) const
{
    while (depth(x) > depth(y))
        x = sigma()(x);
    while (depth(y) > depth(x))
        y = sigma()(y);
    while (x != y) {
        x = sigma()(x);
        y = sigma()(y);
    }
    return x;
}

Tree certify_tree(const PolyEndo& p)
{
    const auto& t = p.t();
    const auto& s = p.s();
    std::size_t n0 = p.p0().size();

    std::vector<std::size_t> producer(n0, npos), consumer(n0, npos);
    for (std::size_t b = 0; b < p.p1().size(); ++b) {
        if (producer[t(b)] != npos)
            throw TreeAxiomError(2, ErrorKind::TNotInjective,
                                 "nodes " + p.p1()[producer[t(b)]] + " and " + p.p1()[b] + " share output " + p.p0()[t(b)]);
        producer[t(b)] = b;
    }
    for (std::size_t e = 0; e < p.p2().size(); ++e) {
        if (consumer[s(e)] != npos)
            throw TreeAxiomError(3, ErrorKind::SNotInjective,
                                 "inputs " + p.p2()[consumer[s(e)]] + " and " + p.p2()[e] + " share edge " + p.p0()[s(e)]);
        consumer[s(e)] = e;
    }
    std::vector<std::size_t> complement;
    for (std::size_t x = 0; x < n0; ++x)
        if (consumer[x] == npos)
            complement.push_back(x);
    if (complement.size() != 1)
        throw TreeAxiomError(3, ErrorKind::SBadComplement,
                             "complement of the image of s has " + std::to_string(complement.size()) + " elements");
    std::size_t root = complement[0];

    std::vector<std::size_t> sigma(n0);
    for (std::size_t x = 0; x < n0; ++x)
        sigma[x] = x == root ? root : t(p.p()(consumer[x]));

    // 0 unvisited, 1 on the current walk, 2 resolved.
    std::vector<int> state(n0, 0);
    std::vector<std::size_t> depth(n0, 0);
    state[root] = 2;
    for (std::size_t x0 = 0; x0 < n0; ++x0) {
        std::vector<std::size_t> walk;
        std::size_t x = x0;
        while (state[x] == 0) {
            state[x] = 1;
            walk.push_back(x);
            x = sigma[x];
        }
        if (state[x] == 1) {
            std::string cycle;
            auto start = std::find(walk.begin(), walk.end(), x);
            for (auto it = start; it != walk.end(); ++it)
                cycle += (it == start ? "" : " -> ") + p.p0()[*it];
            throw TreeAxiomError(4, ErrorKind::SigmaDiverges, "sigma cycles through " + cycle);
        }
        for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
            depth[*it] = depth[sigma[*it]] + 1;
            state[*it] = 2;
        }
    }

    auto rep = std::make_shared<Tree::Rep>();
    rep->poly = p;
    rep->root = root;
    for (std::size_t x = 0; x < n0; ++x)
        if (producer[x] == npos)
            rep->leaves.push_back(x);
    rep->sigma = FinMap(p.p0(), p.p0(), std::move(sigma));
    rep->producer = std::move(producer);
    rep->consumer = std::move(consumer);
    rep->depth = std::move(depth);
    rep->inputs.resize(p.p1().size());
    for (std::size_t b = 0; b < p.p1().size(); ++b)
        for (auto e : p.fibre(b))
            rep->inputs[b].push_back(s(e));
    Tree tree;
    tree.rep_ = std::move(rep);
    return tree;
}

namespace {

std::string fresh_label(const FinSet& taken, std::string base)
{
    while (taken.contains(base))
        base += "'";
    return base;
}

}  // namespace

Tree one_node_tree(const FinSet& inputs)
{
    auto labels = inputs.labels();
    labels.push_back(fresh_label(inputs, "root"));
    FinSet p0(std::move(labels));
    FinSet p1({std::string("b")});
    std::vector<std::size_t> s(inputs.size()), p(inputs.size(), 0);
    for (std::size_t i = 0; i < inputs.size(); ++i)
        s[i] = i;
    return certify_tree(make_poly(p0, p1, inputs, s, p, {inputs.size()}));
}

Tree trivial_tree(const std::string& edge)
{
    return certify_tree(make_poly(FinSet({edge}), FinSet(), FinSet(), {}, {}, {}));
}

Subtree::Subtree(Tree ambient, std::size_t edge) : ambient_(std::move(ambient)), root_(edge)
{
    if (edge >= ambient_.edge_count())
        throw Error(ErrorKind::InvalidArgument, "edge index out of range");
    edges_ = {edge};
    leaves_ = {edge};
}

Subtree::Subtree(Tree ambient, std::vector<std::size_t> nodes) : ambient_(std::move(ambient)), nodes_(std::move(nodes))
{
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    if (nodes_.empty())
        throw Error(ErrorKind::NotASubtree, "empty node set; use the edge constructor for trivial subtrees");
    const auto& t = ambient_;
    std::vector<bool> in(t.node_count(), false);
    for (auto b : nodes_) {
        if (b >= t.node_count())
            throw Error(ErrorKind::InvalidArgument, "node index out of range");
        in[b] = true;
    }
    std::size_t top = npos;
    for (auto b : nodes_) {
        std::size_t up = t.parent_node(b);
        if (up == npos || !in[up]) {
            if (top != npos)
                throw Error(ErrorKind::NotASubtree, "nodes " + t.nodes()[top] + " and " + t.nodes()[b] +
                                                        " are both maximal in the node set");
            top = b;
        }
    }
    root_ = t.output(top);
    std::vector<bool> edge_in(t.edge_count(), false), produced(t.edge_count(), false);
    for (auto b : nodes_) {
        edge_in[t.output(b)] = true;
        produced[t.output(b)] = true;
        for (auto e : t.poly().fibre(b)) {
            marked_.push_back(e);
            edge_in[t.poly().s()(e)] = true;
        }
    }
    std::sort(marked_.begin(), marked_.end());
    for (std::size_t x = 0; x < t.edge_count(); ++x)
        if (edge_in[x])
            edges_.push_back(x);
    // Leaves in depth-first fibre order.
    std::vector<std::size_t> stack{root_};
    while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        if (!produced[x]) {
            leaves_.push_back(x);
            continue;
        }
        const auto& in = t.inputs(t.producer(x));
        for (auto it = in.rbegin(); it != in.rend(); ++it)
            stack.push_back(*it);
    }
}

bool Subtree::contains_edge(std::size_t x) const
{
    return std::binary_search(edges_.begin(), edges_.end(), x);
}

bool Subtree::contains_node(std::size_t b) const
{
    return std::binary_search(nodes_.begin(), nodes_.end(), b);
}

std::size_t Subtree::local_edge(std::size_t x) const
{
    auto it = std::lower_bound(edges_.begin(), edges_.end(), x);
    if (it == edges_.end() || *it != x)
        throw Error(ErrorKind::InvalidArgument, "edge not in subtree");
    return static_cast<std::size_t>(it - edges_.begin());
}

namespace {

std::size_t local_index(const std::vector<std::size_t>& sorted, std::size_t x)
{
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

}  // namespace

Tree Subtree::tree() const
{
    const auto& p = ambient_.poly();
    std::vector<std::size_t> s, pp, t;
    for (auto e : marked_) {
        s.push_back(local_index(edges_, p.s()(e)));
        pp.push_back(local_index(nodes_, p.p()(e)));
    }
    for (auto b : nodes_)
        t.push_back(local_index(edges_, p.t()(b)));
    return certify_tree(make_poly(subset(p.p0(), edges_), subset(p.p1(), nodes_), subset(p.p2(), marked_), s, pp, t));
}

PolyMap Subtree::inclusion() const
{
    auto local = tree();
    return validate_map(local.poly(), ambient_.poly(), edges_, nodes_, marked_);
}

Subtree one_node_subtree(const Tree& t, std::size_t b)
{
    return Subtree(t, std::vector<std::size_t>{b});
}

Subtree whole_subtree(const Tree& t)
{
    if (t.is_trivial())
        return Subtree(t, t.root());
    std::vector<std::size_t> all(t.node_count());
    for (std::size_t b = 0; b < all.size(); ++b)
        all[b] = b;
    return Subtree(t, std::move(all));
}

std::vector<Subtree> enumerate_subtrees(const Tree& t)
{
    std::vector<Subtree> out;
    for (std::size_t x = 0; x < t.edge_count(); ++x)
        out.emplace_back(t, x);
    // Node sets closed under the path to their top node, grown downwards from each top.
    std::vector<std::vector<std::size_t>> below(t.node_count());
    for (std::size_t b = 0; b < t.node_count(); ++b)
        for (auto x : t.inputs(b))
            if (t.producer(x) != npos)
                below[b].push_back(t.producer(x));
    std::vector<std::vector<std::size_t>> sets;
    for (std::size_t top = 0; top < t.node_count(); ++top) {
        std::vector<std::size_t> current{top};
        std::vector<std::size_t> frontier = below[top];
        std::function<void(std::size_t)> grow = [&](std::size_t i) {
            if (i == frontier.size()) {
                sets.push_back(current);
                return;
            }
            grow(i + 1);
            std::size_t b = frontier[i];
            current.push_back(b);
            std::size_t old = frontier.size();
            frontier.insert(frontier.end(), below[b].begin(), below[b].end());
            grow(i + 1);
            frontier.resize(old);
            current.pop_back();
        };
        grow(0);
    }
    std::vector<Subtree> nontrivial;
    for (auto& s : sets)
        nontrivial.emplace_back(t, std::move(s));
    std::sort(nontrivial.begin(), nontrivial.end());
    out.insert(out.end(), nontrivial.begin(), nontrivial.end());
    return out;
}

std::vector<std::pair<Subtree, std::size_t>> enumerate_marked_subtrees(const Tree& t)
{
    std::vector<std::pair<Subtree, std::size_t>> out;
    for (auto& s : enumerate_subtrees(t))
        for (auto l : s.leaves())
            out.emplace_back(s, l);
    return out;
}

Subtree ideal_subtree(const Tree& t, std::size_t z)
{
    std::vector<std::size_t> nodes;
    for (std::size_t b = 0; b < t.node_count(); ++b)
        if (t.leq(t.output(b), z))
            nodes.push_back(b);
    if (nodes.empty())
        return Subtree(t, z);
    return Subtree(t, std::move(nodes));
}

Subtree prune(const Tree& t, std::size_t z)
{
    std::vector<std::size_t> nodes;
    for (std::size_t b = 0; b < t.node_count(); ++b)
        if (!t.leq(t.output(b), z))
            nodes.push_back(b);
    if (nodes.empty())
        return Subtree(t, t.root());
    return Subtree(t, std::move(nodes));
}

Grafting graft(const Tree& s, const Tree& t, std::size_t leaf)
{
    if (leaf >= t.edge_count() || !t.is_leaf(leaf))
        throw Error(ErrorKind::NotALeaf, leaf < t.edge_count() ? t.edges()[leaf] : std::string("edge out of range"));
    auto glue = pushout_over_singleton(FinMap(FinSet({std::string("*")}), s.edges(), {s.root()}),
                                       FinMap(FinSet({std::string("*")}), t.edges(), {leaf}));
    auto nodes = sum(s.nodes(), t.nodes());
    auto marked = sum(s.marked(), t.marked());
    std::size_t n0 = glue.set.size(), n1 = nodes.set.size(), n2 = marked.set.size();
    std::vector<std::size_t> sv(n2), pv(n2), tv(n1);
    const auto& ps = s.poly();
    const auto& pt = t.poly();
    for (std::size_t e = 0; e < ps.p2().size(); ++e) {
        sv[marked.left(e)] = glue.left(ps.s()(e));
        pv[marked.left(e)] = nodes.left(ps.p()(e));
    }
    for (std::size_t e = 0; e < pt.p2().size(); ++e) {
        sv[marked.right(e)] = glue.right(pt.s()(e));
        pv[marked.right(e)] = nodes.right(pt.p()(e));
    }
    for (std::size_t b = 0; b < ps.p1().size(); ++b)
        tv[nodes.left(b)] = glue.left(ps.t()(b));
    for (std::size_t b = 0; b < pt.p1().size(); ++b)
        tv[nodes.right(b)] = glue.right(pt.t()(b));
    auto tree = certify_tree(
        make_poly(FinSet::range("e", n0), FinSet::range("v", n1), FinSet::range("m", n2), sv, pv, tv));
    auto upper = validate_map(s.poly(), tree.poly(), glue.left.images(), nodes.left.images(), marked.left.images());
    auto lower = validate_map(t.poly(), tree.poly(), glue.right.images(), nodes.right.images(), marked.right.images());
    return {tree, upper, lower};
}

Decomposition recursive_decompose(const Tree& t)
{
    Decomposition d;
    d.edge = t.root();
    if (t.is_trivial())
        return d;
    d.trivial = false;
    d.node = t.producer(t.root());
    for (auto e : t.poly().fibre(d.node))
        d.branches.emplace_back(e, ideal_subtree(t, t.poly().s()(e)));
    return d;
}

Tree regraft(const Tree& t, const Decomposition& d)
{
    if (d.trivial)
        return trivial_tree(t.edges()[d.edge]);
    std::vector<std::string> inputs;
    for (auto& [e, sub] : d.branches)
        inputs.push_back(t.edges()[t.poly().s()(e)]);
    Tree current = one_node_tree(FinSet(inputs));
    // Leaf i of the corolla tracked through successive grafts.
    std::vector<std::size_t> leaf(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i)
        leaf[i] = i;
    for (std::size_t i = 0; i < d.branches.size(); ++i) {
        auto g = graft(d.branches[i].second.tree(), current, leaf[i]);
        for (std::size_t j = i + 1; j < leaf.size(); ++j)
            leaf[j] = g.from_lower.a0()(leaf[j]);
        current = g.tree;
    }
    return current;
}

namespace {

std::vector<std::string> edge_encodings(const Tree& t)
{
    std::vector<std::string> enc(t.edge_count());
    std::vector<std::size_t> order(t.edge_count());
    for (std::size_t x = 0; x < order.size(); ++x)
        order[x] = x;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t.depth(a) > t.depth(b); });
    for (auto x : order) {
        std::size_t b = t.producer(x);
        if (b == npos) {
            enc[x] = "|";
            continue;
        }
        std::vector<std::string> kids;
        for (auto y : t.inputs(b))
            kids.push_back(enc[y]);
        std::sort(kids.begin(), kids.end());
        std::string s = "(";
        for (auto& k : kids)
            s += k;
        enc[x] = s + ")";
    }
    return enc;
}

}  // namespace

std::string canonical_form(const Tree& t)
{
    return edge_encodings(t)[t.root()];
}

std::string canonical_form(const Subtree& s)
{
    const auto& t = s.ambient();
    std::function<std::string(std::size_t)> enc = [&](std::size_t x) -> std::string {
        std::size_t b = t.producer(x);
        if (b == npos || !s.contains_node(b))
            return "|";
        std::vector<std::string> kids;
        for (auto y : t.inputs(b))
            kids.push_back(enc(y));
        std::sort(kids.begin(), kids.end());
        std::string out = "(";
        for (auto& k : kids)
            out += k;
        return out + ")";
    };
    return enc(s.root());
}

bool are_isomorphic(const Tree& a, const Tree& b)
{
    return canonical_form(a) == canonical_form(b);
}

namespace {

// Splits "(AB...)" into its top-level children.
std::vector<std::string_view> split_children(std::string_view enc)
{
    std::vector<std::string_view> out;
    std::size_t i = 1;
    while (i + 1 < enc.size()) {
        if (enc[i] == '|') {
            out.push_back(enc.substr(i, 1));
            ++i;
            continue;
        }
        if (enc[i] != '(')
            throw Error(ErrorKind::Parse, "bad tree encoding");
        std::size_t depth = 0, j = i;
        do {
            if (enc[j] == '(')
                ++depth;
            else if (enc[j] == ')')
                --depth;
            ++j;
        } while (depth > 0 && j < enc.size());
        if (depth != 0)
            throw Error(ErrorKind::Parse, "unbalanced tree encoding");
        out.push_back(enc.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

Tree tree_from_encoding(std::string_view encoding)
{
    std::vector<std::string> edges, nodes, marked;
    std::vector<std::size_t> s, p, t;
    std::function<std::size_t(std::string_view, const std::string&)> build = [&](std::string_view enc,
                                                                                 const std::string& path) {
        std::size_t x = edges.size();
        edges.push_back("r" + path);
        if (enc == "|")
            return x;
        if (enc.size() < 2 || enc.front() != '(' || enc.back() != ')')
            throw Error(ErrorKind::Parse, "bad tree encoding");
        std::size_t b = nodes.size();
        nodes.push_back("v" + path);
        t.push_back(x);
        auto kids = split_children(enc);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            std::string sub = path + "." + std::to_string(i);
            std::size_t m = marked.size();
            marked.push_back("i" + sub);
            s.push_back(0);
            p.push_back(b);
            s[m] = build(kids[i], sub);
        }
        return x;
    };
    build(encoding, "");
    return certify_tree(make_poly(FinSet(edges), FinSet(nodes), FinSet(marked), s, p, t));
}

Tree canonical_representative(const Tree& t)
{
    return tree_from_encoding(canonical_form(t));
}

namespace {

struct IsoEnumerator {
    const Tree& a;
    const Tree& b;
    std::vector<std::string> ea, eb;

    // All isomorphisms of the ideal subtrees at x and y, as edge maps on a's edges (npos elsewhere).
    std::vector<std::vector<std::size_t>> isos(std::size_t x, std::size_t y)
    {
        if (ea[x] != eb[y])
            return {};
        std::vector<std::size_t> base(a.edge_count(), npos);
        base[x] = y;
        std::size_t bx = a.producer(x);
        if (bx == npos)
            return {base};
        const auto& xs = a.inputs(bx);
        const auto& ys = b.inputs(b.producer(y));
        std::vector<std::vector<std::size_t>> out;
        std::vector<bool> used(ys.size(), false);
        std::vector<std::vector<std::size_t>> partial{base};
        std::function<void(std::size_t, std::vector<std::vector<std::size_t>>)> rec =
            [&](std::size_t i, std::vector<std::vector<std::size_t>> acc) {
                if (i == xs.size()) {
                    out.insert(out.end(), acc.begin(), acc.end());
                    return;
                }
                for (std::size_t j = 0; j < ys.size(); ++j) {
                    if (used[j] || ea[xs[i]] != eb[ys[j]])
                        continue;
                    auto sub = isos(xs[i], ys[j]);
                    std::vector<std::vector<std::size_t>> next;
                    for (auto& m : acc)
                        for (auto& s : sub) {
                            auto merged = m;
                            for (std::size_t k = 0; k < merged.size(); ++k)
                                if (s[k] != npos)
                                    merged[k] = s[k];
                            next.push_back(std::move(merged));
                        }
                    used[j] = true;
                    rec(i + 1, std::move(next));
                    used[j] = false;
                }
            };
        rec(0, partial);
        return out;
    }
};

}  // namespace

PolyMap embedding_from_edges(const Tree& s, const Tree& t, const std::vector<std::size_t>& a0)
{
    std::vector<std::size_t> a1(s.node_count()), a2(s.marked().size());
    for (std::size_t b = 0; b < s.node_count(); ++b) {
        a1[b] = t.producer(a0[s.output(b)]);
        if (a1[b] == npos)
            throw Error(ErrorKind::NotATreeMorphism, "output of " + s.nodes()[b] + " lands on a leaf");
    }
    for (std::size_t e = 0; e < s.marked().size(); ++e) {
        a2[e] = t.consumer(a0[s.poly().s()(e)]);
        if (a2[e] == npos)
            throw Error(ErrorKind::NotATreeMorphism, "input " + s.marked()[e] + " lands on the root");
    }
    return validate_map(s.poly(), t.poly(), a0, a1, a2);
}

std::vector<PolyMap> isomorphisms(const Tree& a, const Tree& b)
{
    if (a.edge_count() != b.edge_count() || a.node_count() != b.node_count())
        return {};
    IsoEnumerator en{a, b, edge_encodings(a), edge_encodings(b)};
    std::vector<PolyMap> out;
    for (auto& m : en.isos(a.root(), b.root()))
        out.push_back(embedding_from_edges(a, b, m));
    return out;
}

std::vector<PolyMap> automorphisms(const Tree& t)
{
    return isomorphisms(t, t);
}

RootIdealFactorisation factor_root_ideal(const PolyMap& phi, const Tree& s, const Tree& t)
{
    auto middle = ideal_subtree(t, phi.a0()(s.root()));
    auto local = middle.tree();
    std::vector<std::size_t> a0(s.edge_count()), a1(s.node_count()), a2(s.marked().size());
    for (std::size_t x = 0; x < a0.size(); ++x)
        a0[x] = middle.local_edge(phi.a0()(x));
    for (std::size_t b = 0; b < a1.size(); ++b)
        a1[b] = local_index(middle.nodes(), phi.a1()(b));
    for (std::size_t e = 0; e < a2.size(); ++e)
        a2[e] = local_index(middle.marked(), phi.a2()(e));
    auto rp = validate_map(s.poly(), local.poly(), a0, a1, a2);
    return {middle, rp, middle.inclusion()};
}

std::vector<PolyMap> hom_temb(const Tree& s, const Tree& t)
{
    std::vector<PolyMap> out;
    auto target_form = canonical_form(s);
    for (auto& r : enumerate_subtrees(t)) {
        if (r.edges().size() != s.edge_count() || r.nodes().size() != s.node_count())
            continue;
        if (canonical_form(r) != target_form)
            continue;
        auto local = r.tree();
        auto incl = validate_map(local.poly(), t.poly(), r.edges(), r.nodes(), r.marked());
        for (auto& iso : isomorphisms(s, local))
            out.push_back(compose(incl, iso));
    }
    return out;
}

}  // namespace poly

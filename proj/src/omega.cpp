#include "polytree/omega.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace poly {

namespace {

std::pair<std::size_t, std::vector<std::size_t>> subtree_key(const Subtree& s)
{
    return {s.root(), s.nodes()};
}

}  // namespace

FreeMonad free_monad(const Tree& t)
{
    FreeMonad m;
    m.base_ = t.poly();
    m.exact_ = true;
    m.tree_ = t;
    m.subtrees_ = enumerate_subtrees(t);
    std::vector<std::string> l1, l2;
    std::vector<std::size_t> s, p, tt;
    for (std::size_t i = 0; i < m.subtrees_.size(); ++i) {
        const auto& r = m.subtrees_[i];
        m.subtree_index_.emplace(subtree_key(r), i);
        std::string label;
        if (r.is_trivial()) {
            label = "[" + t.edges()[r.root()] + "]";
        } else {
            label = "{";
            for (std::size_t k = 0; k < r.nodes().size(); ++k)
                label += (k ? "," : "") + t.nodes()[r.nodes()[k]];
            label += "}";
        }
        for (auto leaf : r.leaves()) {
            l2.push_back(label + "@" + t.edges()[leaf]);
            s.push_back(leaf);
            p.push_back(i);
        }
        l1.push_back(std::move(label));
        tt.push_back(r.root());
        m.weight_.push_back(r.nodes().size());
    }
    for (std::size_t x = 0; x < t.edge_count(); ++x)
        m.unit_.push_back(m.subtree_index_.at({x, {}}));
    m.carrier_ = make_poly(t.edges(), FinSet(std::move(l1)), FinSet(std::move(l2)), s, p, tt);
    return m;
}

FreeMonad free_monad(const PolyEndo& p, std::size_t max_nodes)
{
    FreeMonad m;
    m.base_ = p;
    m.exact_ = false;
    m.max_nodes_ = max_nodes;
    m.classes_ = enumerate_ptrees(p, {max_nodes, npos, Stumps::Include});
    const auto& w = *m.classes_;
    std::vector<std::string> l1, l2;
    std::vector<std::size_t> s, pp, tt;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& cls = w[i];
        for (std::size_t j = 0; j < cls.leaf_colours.size(); ++j) {
            l2.push_back(cls.code + "@" + std::to_string(j));
            s.push_back(cls.leaf_colours[j]);
            pp.push_back(i);
        }
        l1.push_back(cls.code);
        tt.push_back(cls.colour);
        m.weight_.push_back(cls.nodes);
    }
    for (std::size_t x = 0; x < p.p0().size(); ++x)
        m.unit_.push_back(w.trivial(x));
    m.carrier_ = make_poly(p.p0(), FinSet(std::move(l1)), FinSet(std::move(l2)), s, pp, tt);
    return m;
}

std::size_t FreeMonad::graft(std::size_t node, const std::vector<std::size_t>& branches) const
{
    if (branches.size() != carrier_.arity(node))
        throw Error(ErrorKind::InvalidArgument, "one branch per leaf is required");
    for (std::size_t j = 0; j < branches.size(); ++j)
        if (carrier_.t()(branches[j]) != carrier_.s()(carrier_.fibre(node)[j]))
            throw Error(ErrorKind::ColourMismatch, "branch root does not match its leaf");
    if (tree_) {
        std::vector<std::size_t> nodes = subtrees_[node].nodes();
        for (auto b : branches)
            nodes.insert(nodes.end(), subtrees_[b].nodes().begin(), subtrees_[b].nodes().end());
        std::sort(nodes.begin(), nodes.end());
        auto it = subtree_index_.find({subtrees_[node].root(), nodes});
        return it == subtree_index_.end() ? npos : it->second;
    }
    const auto& w = *classes_;
    std::size_t offset = 0;
    std::function<std::size_t(std::size_t)> rec = [&](std::size_t c) -> std::size_t {
        const auto& cls = w[c];
        if (cls.node == npos)
            return branches[offset++];
        std::vector<std::size_t> kids;
        for (auto k : cls.children) {
            std::size_t g = rec(k);
            if (g == npos)
                return npos;
            kids.push_back(g);
        }
        return w.find_node(cls.node, kids);
    };
    return rec(node);
}

PolyMap FreeMonad::unit() const
{
    auto id = identity_endofunctor(carrier_.p0());
    std::vector<std::size_t> a1, a2;
    for (std::size_t x = 0; x < carrier_.p0().size(); ++x) {
        a1.push_back(unit_[x]);
        a2.push_back(carrier_.fibre(unit_[x])[0]);
    }
    return validate_map(id, carrier_, FinMap::identity(carrier_.p0()), FinMap(id.p1(), carrier_.p1(), a1),
                        FinMap(id.p2(), carrier_.p2(), a2));
}

ComposeBudget FreeMonad::budget() const
{
    auto w = [this](std::size_t i) { return weight_[i]; };
    return {w, w, max_nodes_};
}

Composite FreeMonad::square() const
{
    if (exact_)
        return compose(carrier_, carrier_);
    auto b = budget();
    return compose(carrier_, carrier_, &b);
}

PolyMap FreeMonad::multiplication(const Composite& ff) const
{
    std::vector<std::size_t> a1(ff.outer_node.size()), a2(ff.input_parts.size());
    for (std::size_t n = 0; n < a1.size(); ++n) {
        a1[n] = graft(ff.outer_node[n], ff.inner_nodes[n]);
        if (a1[n] == npos)
            throw Error(ErrorKind::BoundExceeded, "grafting leaves the node bound");
    }
    for (std::size_t k = 0; k < a2.size(); ++k) {
        const auto& [n, e, e2] = ff.input_parts[k];
        std::size_t j = carrier_.position(e);
        std::size_t offset = carrier_.position(e2);
        for (std::size_t i = 0; i < j; ++i)
            offset += carrier_.arity(ff.inner_nodes[n][i]);
        a2[k] = carrier_.fibre(a1[n])[offset];
    }
    return validate_map(ff.poly, carrier_, FinMap::identity(carrier_.p0()), FinMap(ff.poly.p1(), carrier_.p1(), a1),
                        FinMap(ff.poly.p2(), carrier_.p2(), a2));
}

MonadLawReport check_monad_laws(const FreeMonad& m)
{
    MonadLawReport report;
    const auto& c = m.carrier();
    auto ff = m.square();
    auto mu = m.multiplication(ff);
    report.multiplication_valid = true;
    auto eta = m.unit();
    auto idc = identity_map(c);
    auto id = eta.source();

    auto ic = compose(id, c);
    auto eta_c = horizontal_compose(eta, idc, ic, ff);
    report.left_unit = true;
    for (std::size_t n = 0; n < ic.outer_node.size(); ++n)
        report.left_unit = report.left_unit && mu.a1()(eta_c.a1()(n)) == ic.inner_nodes[n][0];
    for (std::size_t k = 0; k < ic.input_parts.size(); ++k)
        report.left_unit = report.left_unit && mu.a2()(eta_c.a2()(k)) == ic.input_parts[k][2];

    auto ci = compose(c, id);
    auto c_eta = horizontal_compose(idc, eta, ci, ff);
    report.right_unit = true;
    for (std::size_t n = 0; n < ci.outer_node.size(); ++n)
        report.right_unit = report.right_unit && mu.a1()(c_eta.a1()(n)) == ci.outer_node[n];
    for (std::size_t k = 0; k < ci.input_parts.size(); ++k)
        report.right_unit = report.right_unit && mu.a2()(c_eta.a2()(k)) == ci.input_parts[k][1];

    std::vector<std::size_t> ff_weight(ff.outer_node.size());
    for (std::size_t n = 0; n < ff_weight.size(); ++n) {
        ff_weight[n] = m.weight(ff.outer_node[n]);
        for (auto q : ff.inner_nodes[n])
            ff_weight[n] += m.weight(q);
    }
    auto w = [&m](std::size_t i) { return m.weight(i); };
    auto wff = [&ff_weight](std::size_t i) { return ff_weight[i]; };
    ComposeBudget left_budget{wff, w, m.max_nodes()};
    ComposeBudget right_budget{w, wff, m.max_nodes()};
    auto left = m.exact() ? compose(ff.poly, c) : compose(ff.poly, c, &left_budget);
    auto right = m.exact() ? compose(c, ff.poly) : compose(c, ff.poly, &right_budget);
    auto mu_c = horizontal_compose(mu, idc, left, ff);
    auto c_mu = horizontal_compose(idc, mu, right, ff);
    auto assoc = associator(ff, ff, left, right);
    report.associativity = left.outer_node.size() == right.outer_node.size();
    for (std::size_t n = 0; n < left.outer_node.size(); ++n)
        report.associativity =
            report.associativity && mu.a1()(mu_c.a1()(n)) == mu.a1()(c_mu.a1()(assoc.a1()(n)));
    for (std::size_t k = 0; k < left.input_parts.size(); ++k)
        report.associativity =
            report.associativity && mu.a2()(mu_c.a2()(k)) == mu.a2()(c_mu.a2()(assoc.a2()(k)));
    report.checked = ff.outer_node.size() + left.outer_node.size() + ic.outer_node.size() + ci.outer_node.size();
    return report;
}

OmegaMorphism make_omega_morphism(const Tree& s, const Tree& t, std::vector<std::size_t> edge_map,
                                  std::vector<Subtree> node_images)
{
    if (edge_map.size() != s.edge_count() || node_images.size() != s.node_count())
        throw Error(ErrorKind::NotATreeMorphism, "edge or node assignment has the wrong size");
    for (auto y : edge_map)
        if (y >= t.edge_count())
            throw Error(ErrorKind::NotATreeMorphism, "edge image out of range");
    for (std::size_t b = 0; b < s.node_count(); ++b) {
        const auto& img = node_images[b];
        if (!img.ambient().edges().identical(t.edges()))
            throw Error(ErrorKind::NotATreeMorphism, "node image is not a subtree of the target");
        if (img.root() != edge_map[s.output(b)])
            throw Error(ErrorKind::NotATreeMorphism, "image of node " + s.nodes()[b] + " is not rooted at the image of its output");
        std::vector<std::size_t> in;
        for (auto x : s.inputs(b))
            in.push_back(edge_map[x]);
        std::sort(in.begin(), in.end());
        auto leaves = img.leaves();
        std::sort(leaves.begin(), leaves.end());
        if (std::adjacent_find(in.begin(), in.end()) != in.end() || in != leaves)
            throw Error(ErrorKind::NotATreeMorphism, "inputs of node " + s.nodes()[b] + " do not match the leaves of its image");
    }
    return OmegaMorphism(s, t, std::move(edge_map), std::move(node_images));
}

namespace {

// The subtree of t with root y and leaf set exactly `leaves`, if any.
std::optional<Subtree> subtree_with_boundary(const Tree& t, std::size_t y, std::vector<std::size_t> leaves)
{
    std::sort(leaves.begin(), leaves.end());
    if (leaves.size() == 1 && leaves[0] == y)
        return Subtree(t, y);
    std::vector<std::size_t> nodes;
    for (std::size_t c = 0; c < t.node_count(); ++c) {
        std::size_t x = t.output(c);
        if (!t.leq(x, y))
            continue;
        bool below_leaf = false;
        for (auto l : leaves)
            below_leaf = below_leaf || t.leq(x, l);
        if (!below_leaf)
            nodes.push_back(c);
    }
    if (nodes.empty())
        return std::nullopt;
    try {
        Subtree r(t, nodes);
        auto got = r.leaves();
        std::sort(got.begin(), got.end());
        if (r.root() != y || got != leaves)
            return std::nullopt;
        return r;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

OmegaMorphism omega_from_edges(const Tree& s, const Tree& t, const std::vector<std::size_t>& edge_map)
{
    std::vector<Subtree> images;
    for (std::size_t b = 0; b < s.node_count(); ++b) {
        std::vector<std::size_t> leaves;
        for (auto x : s.inputs(b))
            leaves.push_back(edge_map.at(x));
        auto r = subtree_with_boundary(t, edge_map.at(s.output(b)), leaves);
        if (!r)
            throw Error(ErrorKind::NotATreeMorphism, "no subtree has the boundary of node " + s.nodes()[b]);
        images.push_back(*r);
    }
    return make_omega_morphism(s, t, edge_map, std::move(images));
}

OmegaMorphism omega_from_embedding(const Tree& s, const Tree& t, const PolyMap& embedding)
{
    std::vector<Subtree> images;
    for (std::size_t b = 0; b < s.node_count(); ++b)
        images.push_back(one_node_subtree(t, embedding.a1()(b)));
    return make_omega_morphism(s, t, embedding.a0().images(), std::move(images));
}

OmegaMorphism omega_identity(const Tree& t)
{
    return omega_from_embedding(t, t, identity_map(t.poly()));
}

Subtree OmegaMorphism::image(const Subtree& r) const
{
    std::size_t root = edge_map_[r.root()];
    std::vector<std::size_t> nodes;
    for (auto b : r.nodes())
        nodes.insert(nodes.end(), node_images_[b].nodes().begin(), node_images_[b].nodes().end());
    if (nodes.empty())
        return Subtree(target_, root);
    return Subtree(target_, std::move(nodes));
}

Subtree OmegaMorphism::image_of_whole() const
{
    return image(whole_subtree(source_));
}

OmegaMorphism compose(const OmegaMorphism& g, const OmegaMorphism& f)
{
    if (!f.target().edges().identical(g.source().edges()))
        throw Error(ErrorKind::ShapeMismatch, "morphisms are not composable");
    std::vector<std::size_t> edges(f.source().edge_count());
    for (std::size_t x = 0; x < edges.size(); ++x)
        edges[x] = g.edge_map()[f.edge_map()[x]];
    std::vector<Subtree> images;
    for (const auto& r : f.node_images())
        images.push_back(g.image(r));
    return make_omega_morphism(f.source(), g.target(), std::move(edges), std::move(images));
}

std::vector<OmegaMorphism> hom_omega(const Tree& s, const Tree& t)
{
    std::vector<OmegaMorphism> out;
    auto subs = enumerate_subtrees(t);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_boundary;
    for (std::size_t i = 0; i < subs.size(); ++i)
        by_boundary[{subs[i].root(), subs[i].leaves().size()}].push_back(i);

    std::vector<std::size_t> order;
    std::function<void(std::size_t)> walk = [&](std::size_t x) {
        std::size_t b = s.producer(x);
        if (b == npos)
            return;
        order.push_back(b);
        for (auto y : s.inputs(b))
            walk(y);
    };
    walk(s.root());

    std::vector<std::size_t> edge_map(s.edge_count(), npos);
    std::vector<std::size_t> chosen(s.node_count(), npos);
    std::function<void(std::size_t)> step = [&](std::size_t k) {
        if (k == order.size()) {
            std::vector<Subtree> images;
            for (auto i : chosen)
                images.push_back(subs[i]);
            out.push_back(make_omega_morphism(s, t, edge_map, std::move(images)));
            return;
        }
        std::size_t b = order[k];
        const auto& in = s.inputs(b);
        auto it = by_boundary.find({edge_map[s.output(b)], in.size()});
        if (it == by_boundary.end())
            return;
        for (auto i : it->second) {
            const auto& leaves = subs[i].leaves();
            std::vector<std::size_t> perm(in.size());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                for (std::size_t j = 0; j < in.size(); ++j)
                    edge_map[in[j]] = leaves[perm[j]];
                chosen[b] = i;
                step(k + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        for (auto x : in)
            edge_map[x] = npos;
    };
    for (std::size_t y = 0; y < t.edge_count(); ++y) {
        edge_map[s.root()] = y;
        step(0);
    }
    return out;
}

MapInTree materialize(const OmegaMorphism& phi)
{
    MapInTree d;
    d.sub_source = enumerate_subtrees(phi.source());
    d.sub_target = enumerate_subtrees(phi.target());
    d.marked_source = enumerate_marked_subtrees(phi.source());
    d.marked_target = enumerate_marked_subtrees(phi.target());
    d.phi0 = phi.edge_map();
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
    for (std::size_t i = 0; i < d.sub_target.size(); ++i)
        index.emplace(subtree_key(d.sub_target[i]), i);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> marked_index;
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < d.sub_target.size(); ++i)
            for (auto l : d.sub_target[i].leaves())
                marked_index.emplace(std::make_pair(i, l), k++);
    }
    std::vector<std::size_t> source_pos;
    for (const auto& r : d.sub_source)
        d.phi1.push_back(index.at(subtree_key(phi.image(r))));
    for (std::size_t i = 0, k = 0; i < d.sub_source.size(); ++i)
        for (auto l : d.sub_source[i].leaves()) {
            d.phi2.push_back(marked_index.at({d.phi1[i], phi.edge_map()[l]}));
            ++k;
        }
    return d;
}

PolyMap carrier_map(const OmegaMorphism& phi, const FreeMonad& source, const FreeMonad& target)
{
    auto d = materialize(phi);
    return validate_map(source.carrier(), target.carrier(), d.phi0, d.phi1, d.phi2);
}

namespace {

bool injective(const std::vector<std::size_t>& v)
{
    auto w = v;
    std::sort(w.begin(), w.end());
    return std::adjacent_find(w.begin(), w.end()) == w.end();
}

bool surjective(const std::vector<std::size_t>& v, std::size_t n)
{
    std::vector<bool> hit(n, false);
    for (auto x : v)
        hit[x] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

}  // namespace

bool is_boundary_preserving(const OmegaMorphism& phi)
{
    return phi.image_of_whole() == whole_subtree(phi.target());
}

bool is_injective(const OmegaMorphism& phi)
{
    auto d = materialize(phi);
    return injective(d.phi0) && injective(d.phi1) && injective(d.phi2);
}

bool is_surjective(const OmegaMorphism& phi)
{
    auto d = materialize(phi);
    return surjective(d.phi0, d.sub_target.empty() ? 0 : phi.target().edge_count()) &&
           surjective(d.phi1, d.sub_target.size()) && surjective(d.phi2, d.marked_target.size());
}

bool is_free(const OmegaMorphism& phi)
{
    return free_conditions(phi)[0];
}

std::array<bool, 7> free_conditions(const OmegaMorphism& phi)
{
    const auto& s = phi.source();
    const auto& t = phi.target();
    const auto& e = phi.edge_map();
    std::array<bool, 7> c{};

    try {
        auto emb = embedding_from_edges(s, t, e);
        c[0] = true;
        for (std::size_t b = 0; b < s.node_count(); ++b)
            c[0] = c[0] && phi.node_images()[b] == one_node_subtree(t, emb.a1()(b));
    } catch (const Error&) {
        c[0] = false;
    }

    c[1] = true;
    for (std::size_t x = 0; x < s.edge_count(); ++x)
        for (std::size_t y = 0; y < s.edge_count(); ++y)
            if (s.leq(x, y))
                c[1] = c[1] && t.leq(e[x], e[y]) && t.distance(e[x], e[y]) == s.distance(x, y);

    c[2] = true;
    for (const auto& img : phi.node_images())
        c[2] = c[2] && img.nodes().size() == 1;

    auto d = materialize(phi);
    c[3] = true;
    for (const auto& r : d.sub_source)
        c[3] = c[3] && canonical_form(phi.image(r)) == canonical_form(r);

    bool inj = injective(d.phi0) && injective(d.phi1) && injective(d.phi2);
    std::vector<bool> hit_sub(d.sub_target.size(), false), hit_edge(t.edge_count(), false);
    for (auto i : d.phi1)
        hit_sub[i] = true;
    for (auto y : d.phi0)
        hit_edge[y] = true;
    auto contained = [](const Subtree& inner, const Subtree& outer) {
        if (inner.is_trivial())
            return outer.contains_edge(inner.root());
        return std::includes(outer.nodes().begin(), outer.nodes().end(), inner.nodes().begin(), inner.nodes().end());
    };
    c[4] = inj;
    c[5] = inj;
    for (std::size_t i = 0; i < d.sub_target.size(); ++i) {
        if (!hit_sub[i])
            continue;
        for (std::size_t j = 0; j < d.sub_target.size(); ++j)
            if (contained(d.sub_target[j], d.sub_target[i]))
                c[4] = c[4] && hit_sub[j];
        for (auto y : d.sub_target[i].edges())
            c[5] = c[5] && hit_edge[y];
    }
    c[6] = inj;
    auto whole = phi.image_of_whole();
    for (auto y : whole.edges())
        c[6] = c[6] && hit_edge[y];
    return c;
}

namespace {

std::size_t local_node(const Subtree& m, std::size_t b)
{
    return static_cast<std::size_t>(std::lower_bound(m.nodes().begin(), m.nodes().end(), b) - m.nodes().begin());
}

}  // namespace

Factorisation factor_generic_free(const OmegaMorphism& phi)
{
    auto m = phi.image_of_whole();
    auto mt = m.tree();
    std::vector<std::size_t> edges;
    for (auto y : phi.edge_map())
        edges.push_back(m.local_edge(y));
    std::vector<Subtree> images;
    for (const auto& img : phi.node_images()) {
        if (img.is_trivial()) {
            images.emplace_back(mt, m.local_edge(img.root()));
            continue;
        }
        std::vector<std::size_t> nodes;
        for (auto b : img.nodes())
            nodes.push_back(local_node(m, b));
        images.emplace_back(mt, std::move(nodes));
    }
    auto generic = make_omega_morphism(phi.source(), mt, std::move(edges), std::move(images));
    auto free = omega_from_embedding(mt, phi.target(), embedding_from_edges(mt, phi.target(), m.edges()));
    return {mt, generic, free};
}

Factorisation factor_surj_inj(const OmegaMorphism& phi)
{
    const auto& s = phi.source();
    std::vector<bool> deleted(s.node_count());
    for (std::size_t b = 0; b < s.node_count(); ++b)
        deleted[b] = phi.node_images()[b].is_trivial();
    std::vector<std::size_t> rep(s.edge_count());
    for (std::size_t x = 0; x < s.edge_count(); ++x) {
        std::size_t y = x;
        for (std::size_t c = s.consuming_node(y); c != npos && deleted[c]; c = s.consuming_node(y))
            y = s.output(c);
        rep[x] = y;
    }
    std::vector<std::size_t> kept_edges, kept_nodes, kept_marked;
    std::vector<std::size_t> edge_pos(s.edge_count(), npos), node_pos(s.node_count(), npos);
    for (std::size_t x = 0; x < s.edge_count(); ++x)
        if (rep[x] == x) {
            edge_pos[x] = kept_edges.size();
            kept_edges.push_back(x);
        }
    for (std::size_t b = 0; b < s.node_count(); ++b)
        if (!deleted[b]) {
            node_pos[b] = kept_nodes.size();
            kept_nodes.push_back(b);
        }
    std::vector<std::size_t> sv, pv, tv;
    for (std::size_t e = 0; e < s.marked().size(); ++e) {
        std::size_t b = s.poly().p()(e);
        if (deleted[b])
            continue;
        kept_marked.push_back(e);
        sv.push_back(edge_pos[rep[s.poly().s()(e)]]);
        pv.push_back(node_pos[b]);
    }
    for (auto b : kept_nodes)
        tv.push_back(edge_pos[rep[s.output(b)]]);
    auto a = certify_tree(make_poly(subset(s.edges(), kept_edges), subset(s.nodes(), kept_nodes),
                                    subset(s.marked(), kept_marked), sv, pv, tv));

    std::vector<std::size_t> sigma_edges(s.edge_count());
    for (std::size_t x = 0; x < s.edge_count(); ++x)
        sigma_edges[x] = edge_pos[rep[x]];
    std::vector<Subtree> sigma_nodes;
    for (std::size_t b = 0; b < s.node_count(); ++b) {
        if (deleted[b])
            sigma_nodes.emplace_back(a, edge_pos[rep[s.output(b)]]);
        else
            sigma_nodes.push_back(one_node_subtree(a, node_pos[b]));
    }
    auto sigma = make_omega_morphism(s, a, std::move(sigma_edges), std::move(sigma_nodes));

    std::vector<std::size_t> iota_edges;
    for (auto x : kept_edges)
        iota_edges.push_back(phi.edge_map()[x]);
    std::vector<Subtree> iota_nodes;
    for (auto b : kept_nodes)
        iota_nodes.push_back(phi.node_images()[b]);
    auto iota = make_omega_morphism(a, phi.target(), std::move(iota_edges), std::move(iota_nodes));
    return {a, sigma, iota};
}

TripleFactorisation triple_factor(const OmegaMorphism& phi)
{
    auto si = factor_surj_inj(phi);
    auto gf = factor_generic_free(si.second);
    return {si.middle, gf.middle, si.first, gf.first, gf.second};
}

ElementFactorisation factor_element(const FreeMonad& m, std::size_t node)
{
    PTree middle = [&] {
        if (m.classes())
            return m.classes()->materialize(node);
        const auto& r = m.subtrees()[node];
        return PTree{r.tree(), r.inclusion()};
    }();
    std::size_t n = m.carrier().arity(node);
    auto corolla = one_node_tree(FinSet::range("l", n));
    auto whole = whole_subtree(middle.tree);
    std::vector<std::size_t> edges(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        edges[i] = whole.leaves()[i];
    edges[n] = middle.tree.root();
    auto generic = make_omega_morphism(corolla, middle.tree, std::move(edges), {whole});
    return {middle, generic};
}

std::vector<OmegaMorphism> boundary_preserving_maps(const Tree& e, const Tree& r)
{
    if (e.node_count() != 1)
        throw Error(ErrorKind::InvalidArgument, "source must be a one-node tree");
    std::size_t b = 0;
    const auto& in = e.inputs(b);
    std::vector<OmegaMorphism> out;
    if (r.leaf_count() != in.size())
        return out;
    auto whole = whole_subtree(r);
    const auto& leaves = whole.leaves();
    std::vector<std::size_t> perm(in.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<std::size_t> edges(e.edge_count());
        edges[e.output(b)] = r.root();
        for (std::size_t i = 0; i < in.size(); ++i)
            edges[in[i]] = leaves[perm[i]];
        out.push_back(make_omega_morphism(e, r, std::move(edges), {whole}));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::size_t count_boundary_preserving(const Tree& e, const Tree& r)
{
    return boundary_preserving_maps(e, r).size();
}

Contraction contract(const Tree& t, std::size_t x)
{
    if (x >= t.edge_count() || !t.is_inner(x))
        throw Error(ErrorKind::NotInnerEdge, x < t.edge_count() ? t.edges()[x] : std::string("edge out of range"));
    std::size_t upper = t.producer(x);
    std::size_t e = t.consumer(x);
    std::size_t lower = t.poly().p()(e);

    std::vector<std::size_t> edges, nodes, marked;
    std::vector<std::size_t> edge_pos(t.edge_count(), npos), node_pos(t.node_count(), npos);
    for (std::size_t y = 0; y < t.edge_count(); ++y)
        if (y != x) {
            edge_pos[y] = edges.size();
            edges.push_back(y);
        }
    std::vector<std::string> node_labels;
    for (std::size_t c = 0; c < t.node_count(); ++c) {
        if (c == upper)
            continue;
        node_pos[c] = nodes.size();
        nodes.push_back(c);
        node_labels.push_back(c == lower ? "(" + t.nodes()[upper] + "," + t.nodes()[lower] + ")" : t.nodes()[c]);
    }
    node_pos[upper] = node_pos[lower];
    std::vector<std::size_t> sv, pv, tv;
    for (std::size_t m = 0; m < t.marked().size(); ++m) {
        if (m == e)
            continue;
        marked.push_back(m);
        sv.push_back(edge_pos[t.poly().s()(m)]);
        pv.push_back(node_pos[t.poly().p()(m)]);
    }
    for (auto c : nodes)
        tv.push_back(edge_pos[t.output(c)]);
    auto tx = certify_tree(make_poly(subset(t.edges(), edges), FinSet(std::move(node_labels)),
                                     subset(t.marked(), marked), sv, pv, tv));
    std::vector<Subtree> images;
    for (auto c : nodes) {
        if (c == lower)
            images.emplace_back(t, std::vector<std::size_t>{upper, lower});
        else
            images.push_back(one_node_subtree(t, c));
    }
    return {tx, make_omega_morphism(tx, t, edges, std::move(images))};
}

Contraction contract_all(const Tree& t, const std::vector<std::size_t>& inner_edges)
{
    Contraction acc{t, omega_identity(t)};
    for (auto x : inner_edges) {
        std::size_t local = acc.tree.edges().index_of(t.edges()[x]);
        auto c = contract(acc.tree, local);
        acc = {c.tree, compose(acc.map, c.map)};
    }
    return acc;
}

GenericInjectionPoset generic_injections(const Tree& t)
{
    if (t.is_trivial())
        throw Error(ErrorKind::TrivialTree, "generic injections need a nontrivial tree");
    GenericInjectionPoset poset;
    poset.inner_edges = t.inner_edges();
    std::size_t k = poset.inner_edges.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<std::size_t> hit, contracted;
        for (std::size_t i = 0; i < k; ++i)
            ((mask >> i) & 1 ? hit : contracted).push_back(poset.inner_edges[i]);
        poset.elements.push_back({hit, contract_all(t, contracted)});
    }
    std::size_t n = poset.elements.size();
    poset.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& gi = poset.elements[i].contraction;
            const auto& gj = poset.elements[j].contraction;
            for (auto& h : hom_omega(gi.tree, gj.tree))
                if (compose(gj.map, h) == gi.map) {
                    poset.leq[i][j] = true;
                    break;
                }
        }
    return poset;
}

ReducedCoverPoset reduced_covers(const Tree& t)
{
    if (t.is_trivial())
        throw Error(ErrorKind::TrivialTree, "reduced covers need a nontrivial tree");
    ReducedCoverPoset poset;
    poset.inner_edges = t.inner_edges();
    std::size_t k = poset.inner_edges.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<std::size_t> parent(t.node_count());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
            return parent[a] == a ? a : parent[a] = find(parent[a]);
        };
        ReducedCover cover;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t x = poset.inner_edges[i];
            if ((mask >> i) & 1)
                cover.cut_edges.push_back(x);
            else
                parent[find(t.producer(x))] = find(t.consuming_node(x));
        }
        std::map<std::size_t, std::vector<std::size_t>> blocks;
        for (std::size_t c = 0; c < t.node_count(); ++c)
            blocks[find(c)].push_back(c);
        for (auto& [r, nodes] : blocks)
            cover.members.emplace_back(t, nodes);
        std::sort(cover.members.begin(), cover.members.end(),
                  [](const Subtree& a, const Subtree& b) { return a.nodes().front() < b.nodes().front(); });
        poset.elements.push_back(std::move(cover));
    }
    std::size_t n = poset.elements.size();
    poset.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool refines = true;
            for (const auto& a : poset.elements[i].members) {
                bool inside = false;
                for (const auto& b : poset.elements[j].members)
                    inside = inside || std::includes(b.nodes().begin(), b.nodes().end(), a.nodes().begin(), a.nodes().end());
                refines = refines && inside;
            }
            poset.leq[i][j] = refines;
        }
    return poset;
}

}  // namespace poly

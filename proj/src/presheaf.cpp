#include "polytree/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace poly {

FinitePresheaf make_presheaf(SitePtr site, std::vector<FinSet> values, std::vector<FinMap> actions)
{
    if (values.size() != site->object_count() || actions.size() != site->arrow_count())
        throw Error(ErrorKind::ShapeMismatch, "one value per object and one action per arrow are required");
    for (std::size_t a = 0; a < actions.size(); ++a) {
        const auto& arrow = site->arrows()[a];
        if (!actions[a].source().identical(values[arrow.target]) || !actions[a].target().identical(values[arrow.source]))
            throw Error(ErrorKind::NotAFunctor, "action " + std::to_string(a) + " has the wrong source or target");
    }
    for (std::size_t o = 0; o < values.size(); ++o) {
        const auto& id = actions[site->identity(o)];
        for (std::size_t x = 0; x < values[o].size(); ++x)
            if (id(x) != x)
                throw Error(ErrorKind::NotAFunctor, "identity of object " + site->codes()[o] + " does not act trivially");
    }
    for (std::size_t b = 0; b < values.size(); ++b)
        for (auto f : site->arrows_into(b))
            for (auto g : site->arrows_from(b)) {
                std::size_t h = site->compose(g, f);
                if (h == npos)
                    continue;
                const auto& c = values[site->arrows()[g].target];
                for (std::size_t z = 0; z < c.size(); ++z)
                    if (actions[h](z) != actions[f](actions[g](z)))
                        throw Error(ErrorKind::NotAFunctor, "composite of arrows " + std::to_string(g) + " and " +
                                                                std::to_string(f) + " is not respected");
            }
    FinitePresheaf x;
    x.site_ = std::move(site);
    x.values_ = std::move(values);
    x.actions_ = std::move(actions);
    return x;
}

namespace {

struct Decoration {
    std::vector<std::size_t> a0, a1, a2;
};

std::string decoration_label(const Tree& t, const PolyEndo& p, const Decoration& d)
{
    if (t.is_trivial())
        return p.p0()[d.a0[t.root()]];
    std::string out = "(";
    for (std::size_t b = 0; b < t.node_count(); ++b) {
        out += (b ? "," : "") + p.p1()[d.a1[b]] + ":[";
        const auto& fib = t.poly().fibre(b);
        for (std::size_t i = 0; i < fib.size(); ++i)
            out += (i ? "," : "") + p.p2()[d.a2[fib[i]]];
        out += "]";
    }
    return out + ")";
}

bool preserves_order(const Tree& t, const PolyEndo& p, const PolyMap& d)
{
    for (std::size_t b = 0; b < t.node_count(); ++b) {
        const auto& fib = t.poly().fibre(b);
        const auto& image = p.fibre(d.a1()(b));
        for (std::size_t i = 0; i < fib.size(); ++i)
            if (d.a2()(fib[i]) != image[i])
                return false;
    }
    return true;
}

std::vector<PolyMap> arrow_embeddings(const Site& site)
{
    std::vector<PolyMap> out;
    for (const auto& a : site.arrows())
        out.push_back(embedding_from_edges(site.objects()[a.source], site.objects()[a.target], a.edge_map));
    return out;
}

std::string family_label(const std::vector<std::string>& parts)
{
    if (parts.size() == 1)
        return parts[0];
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? "," : "") + parts[i];
    return out + ")";
}

void require_kind(const Site& site, std::initializer_list<SiteKind> kinds, const char* what)
{
    if (std::find(kinds.begin(), kinds.end(), site.kind()) == kinds.end())
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " is not defined on a " + to_string(site.kind()) + " site");
}

}  // namespace

FinitePresheaf nerve_N0(const PolyEndo& p, const SitePtr& site)
{
    require_kind(*site, {SiteKind::TEmb, SiteKind::Planar}, "nerve_N0");
    bool planar = site->kind() == SiteKind::Planar;
    std::vector<std::vector<Decoration>> decs(site->object_count());
    std::vector<FinSet> values;
    for (std::size_t o = 0; o < site->object_count(); ++o) {
        const auto& t = site->objects()[o];
        std::vector<std::string> labels;
        for (const auto& pt : decorations(t, p)) {
            const auto& d = pt.decoration;
            if (planar && !preserves_order(t, p, d))
                continue;
            decs[o].push_back({d.a0().images(), d.a1().images(), d.a2().images()});
            labels.push_back(decoration_label(t, p, decs[o].back()));
        }
        values.emplace_back(std::move(labels));
    }
    auto embeddings = arrow_embeddings(*site);
    std::vector<FinMap> actions;
    for (std::size_t a = 0; a < site->arrow_count(); ++a) {
        const auto& arrow = site->arrows()[a];
        const auto& s = site->objects()[arrow.source];
        const auto& e = embeddings[a];
        std::vector<std::size_t> img;
        for (const auto& d : decs[arrow.target]) {
            Decoration r;
            for (std::size_t x = 0; x < s.edge_count(); ++x)
                r.a0.push_back(d.a0[e.a0()(x)]);
            for (std::size_t b = 0; b < s.node_count(); ++b)
                r.a1.push_back(d.a1[e.a1()(b)]);
            for (std::size_t m = 0; m < s.marked().size(); ++m)
                r.a2.push_back(d.a2[e.a2()(m)]);
            img.push_back(values[arrow.source].index_of(decoration_label(s, p, r)));
        }
        actions.emplace_back(values[arrow.target], values[arrow.source], std::move(img));
    }
    return make_presheaf(site, std::move(values), std::move(actions));
}

FinitePresheaf representable(const SitePtr& site, std::size_t object)
{
    if (object >= site->object_count())
        throw Error(ErrorKind::InvalidArgument, "object out of range");
    std::vector<std::vector<std::size_t>> homs(site->object_count());
    for (auto a : site->arrows_into(object))
        homs[site->arrows()[a].source].push_back(a);
    std::vector<FinSet> values;
    for (const auto& h : homs) {
        std::vector<std::string> labels;
        for (auto a : h) {
            std::string l = "[";
            const auto& arrow = site->arrows()[a];
            for (std::size_t x = 0; x < arrow.edge_map.size(); ++x)
                l += (x ? "," : "") + site->objects()[object].edges()[arrow.edge_map[x]];
            labels.push_back(l + "]");
        }
        values.emplace_back(std::move(labels));
    }
    std::vector<FinMap> actions;
    for (std::size_t f = 0; f < site->arrow_count(); ++f) {
        const auto& arrow = site->arrows()[f];
        std::vector<std::size_t> img;
        for (auto h : homs[arrow.target]) {
            std::size_t c = site->compose(h, f);
            auto it = std::find(homs[arrow.source].begin(), homs[arrow.source].end(), c);
            if (it == homs[arrow.source].end())
                throw Error(ErrorKind::NotAFunctor, "composite leaves the site");
            img.push_back(static_cast<std::size_t>(it - homs[arrow.source].begin()));
        }
        actions.emplace_back(values[arrow.target], values[arrow.source], std::move(img));
    }
    return make_presheaf(site, std::move(values), std::move(actions));
}

FinitePresheaf restrict_to_embeddings(const FinitePresheaf& x, const SitePtr& temb)
{
    require_kind(*x.site(), {SiteKind::Tree}, "restrict_to_embeddings");
    require_kind(*temb, {SiteKind::TEmb}, "restrict_to_embeddings target");
    if (temb->max_edges() != x.max_edges())
        throw Error(ErrorKind::InvalidArgument, "truncation bounds differ");
    std::vector<FinMap> actions;
    for (const auto& a : temb->arrows()) {
        std::size_t f = x.site()->find_arrow(a.source, a.target, a.edge_map);
        if (f == npos || !x.site()->arrows()[f].free)
            throw Error(ErrorKind::NotAFunctor, "embedding missing from the tree site");
        actions.push_back(x.action(f));
    }
    return make_presheaf(temb, x.values(), std::move(actions));
}

FinitePresheaf double_at(const FinitePresheaf& x, std::size_t object)
{
    const auto& site = x.site();
    require_kind(*site, {SiteKind::TEmb}, "double_at");
    if (object >= site->object_count())
        throw Error(ErrorKind::InvalidArgument, "object out of range");
    auto values = x.values();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < 2; ++i)
        for (const auto& l : x.value(object).labels())
            labels.push_back("(" + l + "," + std::to_string(i) + ")");
    values[object] = FinSet(std::move(labels));
    std::size_t n = x.value(object).size();
    std::vector<FinMap> actions;
    for (std::size_t a = 0; a < site->arrow_count(); ++a) {
        const auto& arrow = site->arrows()[a];
        const auto& base = x.action(a);
        std::vector<std::size_t> img;
        if (arrow.source == object && arrow.target == object) {
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t z = 0; z < n; ++z)
                    img.push_back(base(z) + i * n);
        } else if (arrow.target == object) {
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t z = 0; z < n; ++z)
                    img.push_back(base(z));
        } else {
            img = base.images();
        }
        actions.emplace_back(values[arrow.target], values[arrow.source], std::move(img));
    }
    return make_presheaf(site, std::move(values), std::move(actions));
}

bool is_cover(const Tree& t, const std::vector<Subtree>& family)
{
    std::vector<bool> edges(t.edge_count(), false), nodes(t.node_count(), false);
    for (const auto& r : family) {
        for (auto x : r.edges())
            edges[x] = true;
        for (auto b : r.nodes())
            nodes[b] = true;
    }
    return std::all_of(edges.begin(), edges.end(), [](bool b) { return b; }) &&
           std::all_of(nodes.begin(), nodes.end(), [](bool b) { return b; });
}

std::vector<std::vector<Subtree>> covering_families(const Tree& t)
{
    if (t.is_trivial())
        return {{Subtree(t, t.root())}};
    std::vector<std::vector<Subtree>> out;
    std::vector<Subtree> elementary;
    for (std::size_t b = 0; b < t.node_count(); ++b)
        elementary.push_back(one_node_subtree(t, b));
    out.push_back(elementary);
    for (auto& cover : reduced_covers(t).elements)
        if (cover.members != elementary)
            out.push_back(cover.members);
    return out;
}

namespace {

struct NodeArrows {
    // Free arrow from the corolla onto each node, and the edge arrows of that corolla.
    std::vector<std::size_t> arrow;
    std::vector<std::vector<std::size_t>> edge_arrows;
};

NodeArrows node_arrows(const Site& site, std::size_t object)
{
    const auto& t = site.objects()[object];
    NodeArrows out;
    for (std::size_t b = 0; b < t.node_count(); ++b) {
        std::size_t c = site.corolla(t.arity(b));
        std::size_t found = npos;
        for (auto a : site.arrows_into(object)) {
            const auto& arrow = site.arrows()[a];
            if (arrow.source == c && arrow.free && arrow.edge_map[site.objects()[c].root()] == t.output(b)) {
                found = a;
                break;
            }
        }
        if (found == npos)
            throw Error(ErrorKind::InvalidArgument, "site lacks the one-node tree of arity " + std::to_string(t.arity(b)));
        out.arrow.push_back(found);
        std::vector<std::size_t> ea;
        for (std::size_t e = 0; e < site.objects()[c].edge_count(); ++e)
            ea.push_back(site.edge_arrow(c, e));
        out.edge_arrows.push_back(std::move(ea));
    }
    return out;
}

}  // namespace

SegalReport segal_check(const FinitePresheaf& x)
{
    const auto& site = *x.site();
    SegalReport report;
    for (std::size_t o = 0; o < site.object_count(); ++o) {
        const auto& t = site.objects()[o];
        if (t.is_trivial())
            continue;
        auto na = node_arrows(site, o);
        std::size_t families = 0;
        std::vector<std::size_t> edge_value(t.edge_count(), npos);
        std::function<void(std::size_t)> rec = [&](std::size_t b) {
            if (b == t.node_count()) {
                ++families;
                return;
            }
            const auto& arrow = site.arrows()[na.arrow[b]];
            const auto& local = x.value(arrow.source);
            for (std::size_t v = 0; v < local.size(); ++v) {
                std::vector<std::size_t> set_here;
                bool ok = true;
                for (std::size_t e = 0; e < arrow.edge_map.size() && ok; ++e) {
                    std::size_t y = arrow.edge_map[e];
                    std::size_t colour = x.action(na.edge_arrows[b][e])(v);
                    if (edge_value[y] == npos) {
                        edge_value[y] = colour;
                        set_here.push_back(y);
                    } else if (edge_value[y] != colour) {
                        ok = false;
                    }
                }
                if (ok)
                    rec(b + 1);
                for (auto y : set_here)
                    edge_value[y] = npos;
            }
        };
        rec(0);
        std::set<std::vector<std::size_t>> images;
        for (std::size_t v = 0; v < x.value(o).size(); ++v) {
            std::vector<std::size_t> tuple;
            for (auto a : na.arrow)
                tuple.push_back(x.action(a)(v));
            images.insert(std::move(tuple));
        }
        ++report.checked;
        std::size_t size = x.value(o).size();
        if (images.size() != size || size != families) {
            report.ok = false;
            report.witness = SegalWitness{o, size, families, images.size() == size};
            return report;
        }
    }
    return report;
}

namespace {

std::size_t swap_arrow(const Site& site, std::size_t c, std::size_t i)
{
    const auto& t = site.objects()[c];
    std::vector<std::size_t> e(t.edge_count());
    for (std::size_t x = 0; x < e.size(); ++x)
        e[x] = x;
    const auto& in = t.inputs(0);
    std::swap(e[in[i]], e[in[i + 1]]);
    return site.find_arrow(c, c, e);
}

template <class Ops>
std::map<std::size_t, Ops> elementary_arities(const FinitePresheaf& x, bool with_generators)
{
    const auto& site = *x.site();
    std::map<std::size_t, Ops> arities;
    for (std::size_t n = 0; site.corolla(n) != npos; ++n) {
        std::size_t c = site.corolla(n);
        const auto& t = site.objects()[c];
        Ops a;
        a.ops = x.value(c);
        for (auto y : t.inputs(0))
            a.projections.push_back(x.action(site.edge_arrow(c, y)));
        a.projections.push_back(x.action(site.edge_arrow(c, t.root())));
        if constexpr (std::is_same_v<Ops, SymArityOps>)
            if (with_generators)
                for (std::size_t i = 0; i + 1 < n; ++i)
                    a.generators.push_back(x.action(swap_arrow(site, c, i)));
        arities.emplace(n, std::move(a));
    }
    return arities;
}

}  // namespace

Collection restrict_to_elementary(const FinitePresheaf& x)
{
    require_kind(*x.site(), {SiteKind::TEmb}, "restrict_to_elementary");
    return make_collection(x.value(x.site()->trivial_object()), elementary_arities<SymArityOps>(x, true));
}

NonSymCollection restrict_to_planar_elementary(const FinitePresheaf& x)
{
    require_kind(*x.site(), {SiteKind::Planar}, "restrict_to_planar_elementary");
    return make_nonsym_collection(x.value(x.site()->trivial_object()), elementary_arities<ArityOps>(x, false));
}

namespace {

// Colour of edge y in a family over the nodes of t.
std::size_t family_colour(const Collection& c, const Tree& t, const std::vector<std::size_t>& fam, std::size_t y)
{
    std::size_t b = t.producer(y);
    if (b != npos)
        return c.colour(t.arity(b), fam[b], t.arity(b));
    std::size_t m = t.consumer(y);
    std::size_t node = t.poly().p()(m);
    return c.colour(t.arity(node), fam[node], t.poly().position(m));
}

std::vector<std::vector<std::size_t>> families_over(const Collection& c, const Tree& t)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> fam(t.node_count());
    std::vector<std::size_t> edge_colour(t.edge_count(), npos);
    std::function<void(std::size_t)> rec = [&](std::size_t b) {
        if (b == t.node_count()) {
            out.push_back(fam);
            return;
        }
        std::size_t n = t.arity(b);
        const auto& ops = c.at(n);
        for (std::size_t v = 0; v < ops.ops.size(); ++v) {
            std::vector<std::size_t> set_here;
            bool ok = true;
            for (std::size_t i = 0; i <= n && ok; ++i) {
                std::size_t y = i == n ? t.output(b) : t.inputs(b)[i];
                std::size_t colour = ops.projections[i](v);
                if (edge_colour[y] == npos) {
                    edge_colour[y] = colour;
                    set_here.push_back(y);
                } else if (edge_colour[y] != colour) {
                    ok = false;
                }
            }
            if (ok) {
                fam[b] = v;
                rec(b + 1);
            }
            for (auto y : set_here)
                edge_colour[y] = npos;
        }
    };
    rec(0);
    return out;
}

std::string family_name(const Collection& c, const Tree& t, const std::vector<std::size_t>& fam)
{
    std::vector<std::string> parts;
    for (std::size_t b = 0; b < t.node_count(); ++b)
        parts.push_back(c.at(t.arity(b)).ops[fam[b]]);
    return family_label(parts);
}

}  // namespace

FinitePresheaf sheaf_extend(const Collection& c, const SitePtr& temb)
{
    require_kind(*temb, {SiteKind::TEmb}, "sheaf_extend");
    const auto& site = *temb;
    std::vector<std::vector<std::vector<std::size_t>>> fams(site.object_count());
    std::vector<FinSet> values;
    for (std::size_t o = 0; o < site.object_count(); ++o) {
        const auto& t = site.objects()[o];
        if (t.is_trivial()) {
            values.push_back(c.colours());
            continue;
        }
        fams[o] = families_over(c, t);
        std::vector<std::string> labels;
        for (const auto& f : fams[o])
            labels.push_back(family_name(c, t, f));
        values.emplace_back(std::move(labels));
    }
    auto embeddings = arrow_embeddings(site);
    std::vector<FinMap> actions;
    for (std::size_t a = 0; a < site.arrow_count(); ++a) {
        const auto& arrow = site.arrows()[a];
        const auto& s = site.objects()[arrow.source];
        const auto& t = site.objects()[arrow.target];
        const auto& e = embeddings[a];
        std::vector<std::size_t> img;
        if (t.is_trivial()) {
            for (std::size_t v = 0; v < c.colours().size(); ++v)
                img.push_back(v);
        } else if (s.is_trivial()) {
            for (const auto& f : fams[arrow.target])
                img.push_back(family_colour(c, t, f, arrow.edge_map[s.root()]));
        } else {
            for (const auto& f : fams[arrow.target]) {
                std::vector<std::size_t> g(s.node_count());
                for (std::size_t b = 0; b < s.node_count(); ++b) {
                    std::size_t node = e.a1()(b);
                    const auto& fib = s.poly().fibre(b);
                    Permutation pi(fib.size());
                    for (std::size_t i = 0; i < fib.size(); ++i)
                        pi[i] = t.poly().position(e.a2()(fib[i]));
                    g[b] = c.act(fib.size(), f[node], pi);
                }
                img.push_back(values[arrow.source].index_of(family_name(c, s, g)));
            }
        }
        actions.emplace_back(values[arrow.target], values[arrow.source], std::move(img));
    }
    return make_presheaf(temb, std::move(values), std::move(actions));
}

std::vector<FinMap> extension_unit(const FinitePresheaf& x, const FinitePresheaf& extension)
{
    const auto& site = *x.site();
    require_kind(site, {SiteKind::TEmb}, "extension_unit");
    if (extension.max_edges() != x.max_edges())
        throw Error(ErrorKind::InvalidArgument, "truncation bounds differ");
    std::vector<FinMap> out;
    for (std::size_t o = 0; o < site.object_count(); ++o) {
        const auto& t = site.objects()[o];
        std::vector<std::size_t> img;
        if (t.is_trivial()) {
            for (const auto& l : x.value(o).labels())
                img.push_back(extension.value(o).index_of(l));
            out.emplace_back(x.value(o), extension.value(o), std::move(img));
            continue;
        }
        std::vector<std::size_t> arrows;
        for (std::size_t b = 0; b < t.node_count(); ++b) {
            std::size_t c = site.corolla(t.arity(b));
            const auto& cor = site.objects()[c];
            std::vector<std::size_t> e(cor.edge_count());
            e[cor.root()] = t.output(b);
            for (std::size_t i = 0; i < t.arity(b); ++i)
                e[cor.inputs(0)[i]] = t.inputs(b)[i];
            arrows.push_back(site.find_arrow(c, o, e));
        }
        for (std::size_t v = 0; v < x.value(o).size(); ++v) {
            std::vector<std::string> parts;
            for (auto a : arrows)
                parts.push_back(x.value(site.arrows()[a].source)[x.action(a)(v)]);
            img.push_back(extension.value(o).index_of(family_label(parts)));
        }
        out.emplace_back(x.value(o), extension.value(o), std::move(img));
    }
    return out;
}

bool is_natural(const FinitePresheaf& x, const FinitePresheaf& y, const std::vector<FinMap>& components)
{
    if (x.max_edges() != y.max_edges() || x.site()->kind() != y.site()->kind())
        throw Error(ErrorKind::InvalidArgument, "truncation bounds differ");
    const auto& site = *x.site();
    for (std::size_t a = 0; a < site.arrow_count(); ++a) {
        const auto& arrow = site.arrows()[a];
        for (std::size_t v = 0; v < x.value(arrow.target).size(); ++v)
            if (components[arrow.source](x.action(a)(v)) != y.action(a)(components[arrow.target](v)))
                return false;
    }
    return true;
}

bool is_natural_iso(const FinitePresheaf& x, const FinitePresheaf& y, const std::vector<FinMap>& components)
{
    for (const auto& c : components)
        if (!c.is_bijective())
            return false;
    return is_natural(x, y, components);
}

const char* to_string(NerveVerdict v)
{
    switch (v) {
    case NerveVerdict::IsPolynomialMonadNerve:
        return "IsPolynomialMonadNerve";
    case NerveVerdict::FailsSegal:
        return "FailsSegal";
    case NerveVerdict::NotFlat:
        return "NotFlat";
    }
    return "?";
}

namespace {

bool same_cardinalities(const FinitePresheaf& a, const FinitePresheaf& b)
{
    for (std::size_t o = 0; o < a.values().size(); ++o)
        if (a.value(o).size() != b.value(o).size())
            return false;
    return true;
}

}  // namespace

NerveReport nerve_theorem_check(const FinitePresheaf& x)
{
    if (x.site()->kind() == SiteKind::Planar)
        return planar_nerve_theorem_check(x);
    if (x.site()->kind() == SiteKind::Tree)
        return nerve_theorem_check(restrict_to_embeddings(x, make_site(SiteKind::TEmb, x.max_edges())));
    NerveReport report;
    report.segal = segal_check(x);
    if (!report.segal.ok) {
        report.verdict = NerveVerdict::FailsSegal;
        return report;
    }
    auto c = restrict_to_elementary(x);
    report.flat_witness = flatness_witness(c);
    if (report.flat_witness) {
        report.verdict = NerveVerdict::NotFlat;
        return report;
    }
    auto p = flat_to_polyend(c);
    report.verdict = NerveVerdict::IsPolynomialMonadNerve;
    report.reconstructed = p;
    report.nerve_matches = same_cardinalities(x, nerve_N0(p, x.site())) && isomorphic(c, nerve_R0(p));
    return report;
}

NerveReport planar_nerve_theorem_check(const FinitePresheaf& x)
{
    require_kind(*x.site(), {SiteKind::Planar}, "planar_nerve_theorem_check");
    NerveReport report;
    report.segal = segal_check(x);
    if (!report.segal.ok) {
        report.verdict = NerveVerdict::FailsSegal;
        return report;
    }
    auto p = nonsym_to_polyend(restrict_to_planar_elementary(x));
    report.verdict = NerveVerdict::IsPolynomialMonadNerve;
    report.reconstructed = p;
    report.nerve_matches = same_cardinalities(x, nerve_N0(p, x.site()));
    return report;
}

}  // namespace poly

#include "polytree/site.hpp"

namespace poly {

namespace {

std::string planar_code(const Tree& t, std::size_t x)
{
    std::size_t b = t.producer(x);
    if (b == npos)
        return "|";
    std::string out = "(";
    for (auto y : t.inputs(b))
        out += planar_code(t, y);
    return out + ")";
}

std::string object_code(SiteKind kind, const Tree& t)
{
    return kind == SiteKind::Planar ? planar_code(t, t.root()) : canonical_form(t);
}

bool order_preserving(const Tree& s, const PolyMap& e)
{
    for (std::size_t b = 0; b < s.node_count(); ++b) {
        const auto& in = s.poly().fibre(b);
        const auto& image = e.target().fibre(e.a1()(b));
        for (std::size_t i = 0; i < in.size(); ++i)
            if (e.a2()(in[i]) != image[i])
                return false;
    }
    return true;
}

}  // namespace

const char* to_string(SiteKind kind)
{
    switch (kind) {
    case SiteKind::TEmb:
        return "temb";
    case SiteKind::Tree:
        return "tree";
    case SiteKind::Planar:
        return "planar";
    }
    return "?";
}

std::size_t Site::find_object(const std::string& code) const
{
    auto it = object_index_.find(code);
    return it == object_index_.end() ? npos : it->second;
}

std::size_t Site::object_of(const Tree& t) const
{
    return find_object(object_code(kind_, t));
}

std::size_t Site::find_arrow(std::size_t source, std::size_t target, const std::vector<std::size_t>& edge_map) const
{
    auto it = arrow_index_.find({{source, target}, edge_map});
    return it == arrow_index_.end() ? npos : it->second;
}

std::size_t Site::compose(std::size_t g, std::size_t f) const
{
    const auto& af = arrows_[f];
    const auto& ag = arrows_[g];
    if (af.target != ag.source)
        throw Error(ErrorKind::ShapeMismatch, "arrows are not composable");
    std::vector<std::size_t> e(af.edge_map.size());
    for (std::size_t x = 0; x < e.size(); ++x)
        e[x] = ag.edge_map[af.edge_map[x]];
    return find_arrow(af.source, ag.target, e);
}

std::size_t Site::corolla(std::size_t arity) const
{
    return arity < corollas_.size() ? corollas_[arity] : npos;
}

std::size_t Site::edge_arrow(std::size_t object, std::size_t x) const
{
    return find_arrow(trivial_, object, {x});
}

OmegaMorphism Site::morphism(std::size_t arrow) const
{
    const auto& a = arrows_[arrow];
    return omega_from_edges(objects_[a.source], objects_[a.target], a.edge_map);
}

void Site::add_arrow(SiteArrow a)
{
    std::size_t i = arrows_.size();
    arrow_index_.emplace(std::make_pair(std::make_pair(a.source, a.target), a.edge_map), i);
    into_[a.target].push_back(i);
    from_[a.source].push_back(i);
    arrows_.push_back(std::move(a));
}

SitePtr make_site(SiteKind kind, std::size_t max_edges)
{
    if (max_edges == 0)
        throw Error(ErrorKind::InvalidArgument, "a site needs at least one edge");
    auto site = std::shared_ptr<Site>(new Site());
    site->kind_ = kind;
    site->max_edges_ = max_edges;
    if (kind == SiteKind::Planar) {
        auto w = enumerate_ptrees(free_monoid_truncated(max_edges - 1), {npos, max_edges, Stumps::Include});
        for (std::size_t i = 0; i < w.size(); ++i)
            site->objects_.push_back(w.materialize(i).tree);
    } else {
        site->objects_ = undecorated_tree_classes(max_edges, Stumps::Include);
    }
    for (std::size_t i = 0; i < site->objects_.size(); ++i) {
        site->codes_.push_back(object_code(kind, site->objects_[i]));
        site->object_index_.emplace(site->codes_.back(), i);
    }
    std::size_t n = site->objects_.size();
    site->into_.resize(n);
    site->from_.resize(n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            const auto& S = site->objects_[s];
            const auto& T = site->objects_[t];
            if (kind == SiteKind::Tree) {
                for (const auto& phi : hom_omega(S, T))
                    site->add_arrow({s, t, phi.edge_map(), is_free(phi)});
                continue;
            }
            for (const auto& e : hom_temb(S, T))
                if (kind == SiteKind::TEmb || order_preserving(S, e))
                    site->add_arrow({s, t, e.a0().images(), true});
        }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> id(site->objects_[i].edge_count());
        for (std::size_t x = 0; x < id.size(); ++x)
            id[x] = x;
        std::size_t a = site->find_arrow(i, i, id);
        if (a == npos)
            throw Error(ErrorKind::NotAFunctor, "site lacks an identity");
        site->identities_.push_back(a);
    }
    site->trivial_ = site->object_of(trivial_tree());
    for (std::size_t k = 0; k + 1 <= max_edges; ++k)
        site->corollas_.push_back(site->object_of(one_node_tree(FinSet::range("l", k))));
    return site;
}

}  // namespace poly

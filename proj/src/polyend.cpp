#include "polytree/polyend.hpp"

#include <algorithm>
#include <numeric>

namespace poly {

namespace {

// Reindexes m onto the given sets when they carry the same labels in another order.
FinMap align(const FinMap& m, const FinSet& source, const FinSet& target, const char* what)
{
    if (m.source().identical(source) && m.target().identical(target))
        return m;
    if (!(m.source() == source) || !(m.target() == target))
        throw Error(ErrorKind::ShapeMismatch, std::string(what) + " has the wrong source or target");
    std::vector<std::size_t> image(source.size());
    for (std::size_t i = 0; i < source.size(); ++i)
        image[i] = target.index_of(m.apply(source[i]));
    return FinMap(source, target, std::move(image));
}

std::string join_labels(const FinSet& set, const std::vector<std::size_t>& idx)
{
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i)
            out += ",";
        out += set[idx[i]];
    }
    return out;
}

}  // namespace

PolyEndo::PolyEndo() : PolyEndo(FinMap(FinSet(), FinSet(), {}), FinMap(FinSet(), FinSet(), {}), FinMap(FinSet(), FinSet(), {}))
{
}

PolyEndo::PolyEndo(FinMap s, FinMap p, FinMap t, std::optional<std::size_t> arity_bound)
{
    if (!s.source().identical(p.source()))
        throw Error(ErrorKind::ShapeMismatch, "s and p must share the source P2");
    if (!s.target().identical(t.target()))
        throw Error(ErrorKind::ShapeMismatch, "s and t must share the target P0");
    if (!p.target().identical(t.source()))
        throw Error(ErrorKind::ShapeMismatch, "p must land in the source P1 of t");
    auto rep = std::make_shared<Rep>();
    rep->fibres.assign(t.source().size(), {});
    rep->position.assign(s.source().size(), 0);
    for (std::size_t e = 0; e < p.source().size(); ++e) {
        auto& fib = rep->fibres[p(e)];
        rep->position[e] = fib.size();
        fib.push_back(e);
    }
    rep->s = std::move(s);
    rep->p = std::move(p);
    rep->t = std::move(t);
    rep->arity_bound = arity_bound;
    rep_ = std::move(rep);
}

PolyEndo make_poly(const FinSet& p0, const FinSet& p1, const FinSet& p2, const std::vector<std::size_t>& s,
                   const std::vector<std::size_t>& p, const std::vector<std::size_t>& t)
{
    return PolyEndo(FinMap(p2, p0, s), FinMap(p2, p1, p), FinMap(p1, p0, t));
}

PolyEndo identity_endofunctor(const FinSet& colours)
{
    auto id = FinMap::identity(colours);
    return PolyEndo(id, id, id);
}

PolyEndo free_monoid_truncated(std::size_t max_arity)
{
    FinSet p0({std::string("*")});
    auto p1 = FinSet::range("", max_arity + 1);
    std::vector<std::string> inputs;
    std::vector<std::size_t> s, p, t(max_arity + 1, 0);
    for (std::size_t n = 0; n <= max_arity; ++n)
        for (std::size_t i = 0; i < n; ++i) {
            inputs.push_back("(" + std::to_string(i) + "," + std::to_string(n) + ")");
            s.push_back(0);
            p.push_back(n);
        }
    FinSet p2(std::move(inputs));
    return PolyEndo(FinMap(p2, p0, s), FinMap(p2, p1, p), FinMap(p1, p0, t), max_arity);
}

PolyMap validate_map(const PolyEndo& q, const PolyEndo& pp, FinMap a0, FinMap a1, FinMap a2)
{
    a0 = align(a0, q.p0(), pp.p0(), "a0");
    a1 = align(a1, q.p1(), pp.p1(), "a1");
    a2 = align(a2, q.p2(), pp.p2(), "a2");
    for (std::size_t b = 0; b < q.p1().size(); ++b)
        if (a0(q.t()(b)) != pp.t()(a1(b)))
            throw Error(ErrorKind::SquareNotCommuting, "t-square fails at node " + q.p1()[b]);
    for (std::size_t e = 0; e < q.p2().size(); ++e) {
        if (a0(q.s()(e)) != pp.s()(a2(e)))
            throw Error(ErrorKind::SquareNotCommuting, "s-square fails at input " + q.p2()[e]);
        if (a1(q.p()(e)) != pp.p()(a2(e)))
            throw Error(ErrorKind::SquareNotCommuting, "p-square fails at input " + q.p2()[e]);
    }
    for (std::size_t b = 0; b < q.p1().size(); ++b) {
        const auto& fib = q.fibre(b);
        std::size_t target_arity = pp.arity(a1(b));
        if (fib.size() != target_arity)
            throw Error(ErrorKind::MiddleNotCartesian, "node " + q.p1()[b] + " has fibre size " +
                                                           std::to_string(fib.size()) + " but its image has " +
                                                           std::to_string(target_arity));
        std::vector<bool> hit(target_arity, false);
        for (auto e : fib) {
            auto pos = pp.position(a2(e));
            if (hit[pos])
                throw Error(ErrorKind::MiddleNotCartesian, "fibre of node " + q.p1()[b] + " is not mapped bijectively");
            hit[pos] = true;
        }
    }
    return PolyMap(q, pp, std::move(a0), std::move(a1), std::move(a2));
}

PolyMap validate_map(const PolyEndo& source, const PolyEndo& target, std::vector<std::size_t> a0,
                     std::vector<std::size_t> a1, std::vector<std::size_t> a2)
{
    return validate_map(source, target, FinMap(source.p0(), target.p0(), std::move(a0)),
                        FinMap(source.p1(), target.p1(), std::move(a1)),
                        FinMap(source.p2(), target.p2(), std::move(a2)));
}

PolyMap identity_map(const PolyEndo& p)
{
    return validate_map(p, p, FinMap::identity(p.p0()), FinMap::identity(p.p1()), FinMap::identity(p.p2()));
}

PolyMap compose(const PolyMap& g, const PolyMap& f)
{
    return validate_map(f.source(), g.target(), compose(g.a0(), f.a0()), compose(g.a1(), f.a1()),
                        compose(g.a2(), f.a2()));
}

Evaluation evaluate(const PolyEndo& p, const FinMap& x)
{
    if (!(x.target() == p.p0()))
        throw Error(ErrorKind::ColourMismatch, "X must lie over the colours of P");
    auto xa = align(x, x.source(), p.p0(), "X");
    std::vector<std::vector<std::size_t>> over(p.p0().size());
    for (std::size_t i = 0; i < xa.source().size(); ++i)
        over[xa(i)].push_back(i);

    Evaluation ev;
    std::vector<std::string> labels;
    std::vector<std::size_t> colour;
    for (std::size_t b = 0; b < p.p1().size(); ++b) {
        const auto& fib = p.fibre(b);
        std::vector<std::size_t> choice(fib.size(), 0);
        bool empty = false;
        for (auto e : fib)
            if (over[p.s()(e)].empty())
                empty = true;
        if (empty)
            continue;
        while (true) {
            std::vector<std::size_t> f(fib.size());
            for (std::size_t i = 0; i < fib.size(); ++i)
                f[i] = over[p.s()(fib[i])][choice[i]];
            labels.push_back("(" + p.p1()[b] + ":[" + join_labels(xa.source(), f) + "])");
            colour.push_back(p.t()(b));
            ev.node.push_back(b);
            ev.assignment.push_back(std::move(f));
            std::size_t k = 0;
            while (k < fib.size() && ++choice[k] == over[p.s()(fib[k])].size())
                choice[k++] = 0;
            if (k == fib.size())
                break;
        }
    }
    ev.to_colours = FinMap(FinSet(std::move(labels)), p.p0(), std::move(colour));
    return ev;
}

std::size_t Composite::find_node(std::size_t b, const std::vector<std::size_t>& f) const
{
    std::vector<std::size_t> key;
    key.reserve(f.size() + 1);
    key.push_back(b);
    key.insert(key.end(), f.begin(), f.end());
    auto it = node_index.find(key);
    return it == node_index.end() ? npos : it->second;
}

std::size_t Composite::find_input(std::size_t node, std::size_t e, std::size_t e2) const
{
    auto it = input_index.find({node, e, e2});
    return it == input_index.end() ? npos : it->second;
}

Composite compose(const PolyEndo& outer, const PolyEndo& inner, const ComposeBudget* budget)
{
    if (!outer.p0().identical(inner.p0()))
        throw Error(ErrorKind::ColourMismatch, "composed endofunctors must share their colours");
    std::vector<std::vector<std::size_t>> by_colour(inner.p0().size());
    for (std::size_t q = 0; q < inner.p1().size(); ++q)
        by_colour[inner.t()(q)].push_back(q);

    Composite c;
    c.outer = outer;
    c.inner = inner;
    std::vector<std::string> node_labels;
    std::vector<std::size_t> node_colour;

    for (std::size_t b = 0; b < outer.p1().size(); ++b) {
        const auto& fib = outer.fibre(b);
        std::size_t base = budget ? budget->outer_weight(b) : 0;
        if (budget && base > budget->budget)
            continue;
        std::vector<std::size_t> f(fib.size());
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
            if (i == fib.size()) {
                std::vector<std::size_t> key{b};
                key.insert(key.end(), f.begin(), f.end());
                c.node_index.emplace(key, c.outer_node.size());
                c.outer_node.push_back(b);
                c.inner_nodes.push_back(f);
                node_labels.push_back("(" + outer.p1()[b] + ":[" + join_labels(inner.p1(), f) + "])");
                node_colour.push_back(outer.t()(b));
                return;
            }
            for (auto q : by_colour[outer.s()(fib[i])]) {
                std::size_t w = budget ? used + budget->inner_weight(q) : 0;
                if (budget && w > budget->budget)
                    continue;
                f[i] = q;
                rec(i + 1, w);
            }
        };
        rec(0, base);
    }

    std::vector<std::string> input_labels;
    std::vector<std::size_t> s, p;
    for (std::size_t n = 0; n < c.outer_node.size(); ++n) {
        std::size_t b = c.outer_node[n];
        const auto& fib = outer.fibre(b);
        for (std::size_t i = 0; i < fib.size(); ++i) {
            std::size_t q = c.inner_nodes[n][i];
            for (auto e2 : inner.fibre(q)) {
                c.input_index.emplace(std::array<std::size_t, 3>{n, fib[i], e2}, c.input_parts.size());
                c.input_parts.push_back({n, fib[i], e2});
                input_labels.push_back(node_labels[n].substr(0, node_labels[n].size() - 1) + ":" + outer.p2()[fib[i]] +
                                       ":" + inner.p2()[e2] + ")");
                s.push_back(inner.s()(e2));
                p.push_back(n);
            }
        }
    }
    FinSet p1(std::move(node_labels));
    FinSet p2(std::move(input_labels));
    c.poly = PolyEndo(FinMap(p2, outer.p0(), std::move(s)), FinMap(p2, p1, std::move(p)),
                      FinMap(p1, outer.p0(), std::move(node_colour)));
    return c;
}

PolyMap horizontal_compose(const PolyMap& alpha, const PolyMap& beta, const Composite& source,
                           const Composite& target)
{
    if (!(alpha.a0() == beta.a0()))
        throw Error(ErrorKind::ColourMismatch, "horizontal composite needs equal colour maps");
    const auto& pt = alpha.target();
    std::vector<std::size_t> a1(source.outer_node.size()), a2(source.input_parts.size());
    for (std::size_t n = 0; n < source.outer_node.size(); ++n) {
        std::size_t b = source.outer_node[n];
        std::size_t b2 = alpha.a1()(b);
        std::vector<std::size_t> f2(pt.arity(b2));
        const auto& fib = alpha.source().fibre(b);
        for (std::size_t i = 0; i < fib.size(); ++i)
            f2[pt.position(alpha.a2()(fib[i]))] = beta.a1()(source.inner_nodes[n][i]);
        a1[n] = target.find_node(b2, f2);
        if (a1[n] == npos)
            throw Error(ErrorKind::BoundExceeded, "image node outside the target composite");
    }
    for (std::size_t m = 0; m < source.input_parts.size(); ++m) {
        const auto& [n, e, e2] = source.input_parts[m];
        a2[m] = target.find_input(a1[n], alpha.a2()(e), beta.a2()(e2));
        if (a2[m] == npos)
            throw Error(ErrorKind::BoundExceeded, "image input outside the target composite");
    }
    return validate_map(source.poly, target.poly, align(alpha.a0(), source.poly.p0(), target.poly.p0(), "a0"),
                        FinMap(source.poly.p1(), target.poly.p1(), std::move(a1)),
                        FinMap(source.poly.p2(), target.poly.p2(), std::move(a2)));
}

PolyMap associator(const Composite& pq_parts, const Composite& qr, const Composite& pq_r, const Composite& p_qr)
{
    const auto& pq = pq_r.outer;
    const auto& P = pq_parts.outer;
    const auto& Q = pq_parts.inner;
    if (!pq_parts.poly.p1().identical(pq.p1()) || !pq_parts.poly.p2().identical(pq.p2()) ||
        !qr.outer.p1().identical(Q.p1()) || !p_qr.inner.p1().identical(qr.poly.p1()))
        throw Error(ErrorKind::ShapeMismatch, "associator expects composites built from the same P, Q and R");

    std::vector<std::size_t> a1(pq_r.outer_node.size());
    std::vector<std::vector<std::size_t>> h_of(pq_r.outer_node.size());
    for (std::size_t m = 0; m < pq_r.outer_node.size(); ++m) {
        std::size_t n = pq_r.outer_node[m];
        std::size_t b = pq_parts.outer_node[n];
        const auto& f = pq_parts.inner_nodes[n];
        const auto& g = pq_r.inner_nodes[m];
        const auto& fib = P.fibre(b);
        std::vector<std::size_t> h(fib.size());
        for (std::size_t i = 0; i < fib.size(); ++i) {
            std::vector<std::size_t> ge;
            for (auto e2 : Q.fibre(f[i])) {
                std::size_t x = pq_parts.find_input(n, fib[i], e2);
                ge.push_back(g[pq.position(x)]);
            }
            h[i] = qr.find_node(f[i], ge);
            if (h[i] == npos)
                throw Error(ErrorKind::BoundExceeded, "associator image outside Q o R");
        }
        a1[m] = p_qr.find_node(b, h);
        if (a1[m] == npos)
            throw Error(ErrorKind::BoundExceeded, "associator image outside P o (Q o R)");
        h_of[m] = std::move(h);
    }
    std::vector<std::size_t> a2(pq_r.input_parts.size());
    for (std::size_t k = 0; k < pq_r.input_parts.size(); ++k) {
        const auto& [m, x, e3] = pq_r.input_parts[k];
        const auto& [n, e, e2] = pq_parts.input_parts[x];
        (void)n;
        std::size_t i = P.position(e);
        std::size_t y = qr.find_input(h_of[m][i], e2, e3);
        a2[k] = p_qr.find_input(a1[m], e, y);
        if (y == npos || a2[k] == npos)
            throw Error(ErrorKind::BoundExceeded, "associator input outside P o (Q o R)");
    }
    return validate_map(pq_r.poly, p_qr.poly, FinMap::identity(pq_r.poly.p0()),
                        FinMap(pq_r.poly.p1(), p_qr.poly.p1(), std::move(a1)),
                        FinMap(pq_r.poly.p2(), p_qr.poly.p2(), std::move(a2)));
}

namespace {

struct IsoSearch {
    const PolyEndo& a;
    const PolyEndo& b;
    const IsoFilter& allowed;
    std::vector<std::size_t> m0, inv0, m1, m2;
    std::vector<bool> used1, used2;

    bool ok(int level, std::size_t x, std::size_t y) const { return !allowed || allowed(level, x, y); }

    bool bind_colour(std::size_t x, std::size_t y, std::vector<std::size_t>& undo)
    {
        if (m0[x] != npos)
            return m0[x] == y;
        if (inv0[y] != npos || !ok(0, x, y))
            return false;
        m0[x] = y;
        inv0[y] = x;
        undo.push_back(x);
        return true;
    }

    void unbind(std::vector<std::size_t>& undo, std::size_t keep)
    {
        while (undo.size() > keep) {
            inv0[m0[undo.back()]] = npos;
            m0[undo.back()] = npos;
            undo.pop_back();
        }
    }

    bool nodes(std::size_t x, std::vector<std::size_t>& undo)
    {
        if (x == a.p1().size())
            return colours(0, undo);
        for (std::size_t y = 0; y < b.p1().size(); ++y) {
            if (used1[y] || a.arity(x) != b.arity(y) || !ok(1, x, y))
                continue;
            std::size_t keep = undo.size();
            if (bind_colour(a.t()(x), b.t()(y), undo)) {
                used1[y] = true;
                m1[x] = y;
                if (inputs(x, 0, undo))
                    return true;
                used1[y] = false;
            }
            unbind(undo, keep);
        }
        return false;
    }

    bool inputs(std::size_t x, std::size_t i, std::vector<std::size_t>& undo)
    {
        const auto& fa = a.fibre(x);
        if (i == fa.size())
            return nodes(x + 1, undo);
        for (auto e2 : b.fibre(m1[x])) {
            if (used2[e2] || !ok(2, fa[i], e2))
                continue;
            std::size_t keep = undo.size();
            if (bind_colour(a.s()(fa[i]), b.s()(e2), undo)) {
                used2[e2] = true;
                m2[fa[i]] = e2;
                if (inputs(x, i + 1, undo))
                    return true;
                used2[e2] = false;
            }
            unbind(undo, keep);
        }
        return false;
    }

    bool colours(std::size_t x, std::vector<std::size_t>& undo)
    {
        while (x < a.p0().size() && m0[x] != npos)
            ++x;
        if (x == a.p0().size())
            return true;
        for (std::size_t y = 0; y < b.p0().size(); ++y) {
            std::size_t keep = undo.size();
            if (bind_colour(x, y, undo) && colours(x + 1, undo))
                return true;
            unbind(undo, keep);
        }
        return false;
    }
};

std::vector<std::size_t> arity_profile(const PolyEndo& p)
{
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < p.p1().size(); ++b)
        out.push_back(p.arity(b));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::optional<PolyMap> find_isomorphism(const PolyEndo& a, const PolyEndo& b, const IsoFilter& allowed)
{
    if (a.p0().size() != b.p0().size() || a.p1().size() != b.p1().size() || a.p2().size() != b.p2().size())
        return std::nullopt;
    if (arity_profile(a) != arity_profile(b))
        return std::nullopt;
    IsoSearch search{a, b, allowed, std::vector<std::size_t>(a.p0().size(), npos),
                     std::vector<std::size_t>(b.p0().size(), npos), std::vector<std::size_t>(a.p1().size(), npos),
                     std::vector<std::size_t>(a.p2().size(), npos), std::vector<bool>(b.p1().size(), false),
                     std::vector<bool>(b.p2().size(), false)};
    std::vector<std::size_t> undo;
    if (!search.nodes(0, undo))
        return std::nullopt;
    return validate_map(a, b, search.m0, search.m1, search.m2);
}

bool evaluation_is_cartesian(const PolyMap& u, const FinMap& x)
{
    const auto& q = u.source();
    const auto& pp = u.target();
    // X' = a0^* X over Q0.
    std::vector<std::string> labels;
    std::vector<std::size_t> over, second;
    auto xa = align(x, x.source(), pp.p0(), "X");
    for (std::size_t j = 0; j < q.p0().size(); ++j)
        for (std::size_t k = 0; k < xa.source().size(); ++k)
            if (xa(k) == u.a0()(j)) {
                labels.push_back("(" + q.p0()[j] + "," + xa.source()[k] + ")");
                over.push_back(j);
                second.push_back(k);
            }
    FinMap x2(FinSet(std::move(labels)), q.p0(), over);
    auto eq = evaluate(q, x2);
    auto ep = evaluate(pp, xa);
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
    for (std::size_t i = 0; i < ep.node.size(); ++i)
        index[{ep.node[i], ep.assignment[i]}] = i;
    std::vector<std::size_t> top(eq.node.size());
    for (std::size_t i = 0; i < eq.node.size(); ++i) {
        std::size_t b = u.a1()(eq.node[i]);
        std::vector<std::size_t> f(pp.arity(b));
        const auto& fib = q.fibre(eq.node[i]);
        for (std::size_t k = 0; k < fib.size(); ++k)
            f[pp.position(u.a2()(fib[k]))] = second[eq.assignment[i][k]];
        top[i] = index.at({b, f});
    }
    Square sq{FinMap(eq.set(), ep.set(), std::move(top)), FinMap(eq.set(), q.p1(), eq.node),
              FinMap(ep.set(), pp.p1(), ep.node), u.a1()};
    return is_cartesian(sq);
}

ElementsCategory elements_category(const PolyEndo& p)
{
    auto objects = sum(p.p0(), p.p1()).set;
    auto arrows = sum(p.p1(), p.p2()).set;
    std::size_t n0 = p.p0().size(), n1 = p.p1().size();
    std::vector<std::size_t> src, tgt;
    for (std::size_t b = 0; b < n1; ++b) {
        src.push_back(p.t()(b));
        tgt.push_back(n0 + b);
    }
    for (std::size_t e = 0; e < p.p2().size(); ++e) {
        src.push_back(p.s()(e));
        tgt.push_back(n0 + p.p()(e));
    }
    return {p, objects, arrows, FinMap(arrows, objects, std::move(src)), FinMap(arrows, objects, std::move(tgt))};
}

std::pair<FinMap, FinMap> elements_functor(const PolyMap& u, const ElementsCategory& source,
                                           const ElementsCategory& target)
{
    const auto& q = u.source();
    std::vector<std::size_t> obj, arr;
    for (std::size_t i = 0; i < q.p0().size(); ++i)
        obj.push_back(target.colour_object(u.a0()(i)));
    for (std::size_t b = 0; b < q.p1().size(); ++b)
        obj.push_back(target.node_object(u.a1()(b)));
    for (std::size_t b = 0; b < q.p1().size(); ++b)
        arr.push_back(target.t_arrow(u.a1()(b)));
    for (std::size_t e = 0; e < q.p2().size(); ++e)
        arr.push_back(target.input_arrow(u.a2()(e)));
    return {FinMap(source.objects, target.objects, std::move(obj)), FinMap(source.arrows, target.arrows, std::move(arr))};
}

SlicedObject make_sliced(const PolyMap& structure_map)
{
    return {structure_map.source(), structure_map};
}

ElementsPresheaf slice_to_presheaf(const SlicedObject& q)
{
    const auto& u = q.structure_map;
    const auto& base = u.target();
    const auto& tot = u.source();
    ElementsPresheaf x{elements_category(base), {}, {}};
    std::vector<std::vector<std::size_t>> a(base.p0().size()), n(base.p1().size());
    for (std::size_t j = 0; j < tot.p0().size(); ++j)
        a[u.a0()(j)].push_back(j);
    for (std::size_t c = 0; c < tot.p1().size(); ++c)
        n[u.a1()(c)].push_back(c);
    std::vector<std::size_t> pos0(tot.p0().size()), pos1(tot.p1().size());
    for (auto& v : a)
        for (std::size_t k = 0; k < v.size(); ++k)
            pos0[v[k]] = k;
    for (auto& v : n)
        for (std::size_t k = 0; k < v.size(); ++k)
            pos1[v[k]] = k;
    for (auto& v : a)
        x.values.push_back(subset(tot.p0(), v));
    for (auto& v : n)
        x.values.push_back(subset(tot.p1(), v));
    for (std::size_t b = 0; b < base.p1().size(); ++b) {
        std::vector<std::size_t> img;
        for (auto c : n[b])
            img.push_back(pos0[tot.t()(c)]);
        x.actions.emplace_back(x.values[x.category.node_object(b)], x.values[base.t()(b)], std::move(img));
    }
    for (std::size_t e = 0; e < base.p2().size(); ++e) {
        std::vector<std::size_t> img;
        for (auto c : n[base.p()(e)]) {
            std::size_t hit = npos;
            for (auto m : tot.fibre(c))
                if (u.a2()(m) == e)
                    hit = m;
            img.push_back(pos0[tot.s()(hit)]);
        }
        x.actions.emplace_back(x.values[x.category.node_object(base.p()(e))], x.values[base.s()(e)], std::move(img));
    }
    return x;
}

SlicedObject presheaf_to_slice(const ElementsPresheaf& x)
{
    const auto& base = x.category.base;
    std::vector<std::string> l0, l1, l2;
    std::vector<std::size_t> off0, off1;
    std::vector<std::size_t> a0, a1, a2, s, p, t;
    for (std::size_t i = 0; i < base.p0().size(); ++i) {
        off0.push_back(l0.size());
        for (const auto& v : x.values[i].labels()) {
            l0.push_back("(" + base.p0()[i] + "," + v + ")");
            a0.push_back(i);
        }
    }
    for (std::size_t b = 0; b < base.p1().size(); ++b) {
        off1.push_back(l1.size());
        const auto& xb = x.values[x.category.node_object(b)];
        const auto& act = x.actions[x.category.t_arrow(b)];
        for (std::size_t k = 0; k < xb.size(); ++k) {
            l1.push_back("(" + base.p1()[b] + "," + xb[k] + ")");
            a1.push_back(b);
            t.push_back(off0[base.t()(b)] + act(k));
        }
    }
    for (std::size_t e = 0; e < base.p2().size(); ++e) {
        std::size_t b = base.p()(e);
        const auto& xb = x.values[x.category.node_object(b)];
        const auto& act = x.actions[x.category.input_arrow(e)];
        for (std::size_t k = 0; k < xb.size(); ++k) {
            l2.push_back("(" + base.p2()[e] + "," + xb[k] + ")");
            a2.push_back(e);
            s.push_back(off0[base.s()(e)] + act(k));
            p.push_back(off1[b] + k);
        }
    }
    FinSet q0(std::move(l0)), q1(std::move(l1)), q2(std::move(l2));
    auto tot = make_poly(q0, q1, q2, s, p, t);
    return make_sliced(validate_map(tot, base, a0, a1, a2));
}

bool isomorphic_over_base(const SlicedObject& a, const SlicedObject& b)
{
    const auto& ua = a.structure_map;
    const auto& ub = b.structure_map;
    IsoFilter over = [&](int level, std::size_t x, std::size_t y) {
        switch (level) {
        case 0: return ua.a0()(x) == ub.a0()(y);
        case 1: return ua.a1()(x) == ub.a1()(y);
        default: return ua.a2()(x) == ub.a2()(y);
        }
    };
    return find_isomorphism(a.total, b.total, over).has_value();
}

bool canonical_colimit_check(const PolyEndo& p)
{
    auto id = make_sliced(identity_map(p));
    auto round = presheaf_to_slice(slice_to_presheaf(id));
    return isomorphic_over_base(id, round);
}

}  // namespace poly

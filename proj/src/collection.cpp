#include "polytree/collection.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace poly {

namespace {

std::size_t factorial(std::size_t n)
{
    std::size_t f = 1;
    for (std::size_t k = 2; k <= n; ++k)
        f *= k;
    return f;
}

std::string perm_label(const Permutation& sigma)
{
    std::string out = "[";
    for (std::size_t i = 0; i < sigma.size(); ++i)
        out += (i ? "," : "") + std::to_string(sigma[i]);
    return out + "]";
}

bool is_identity(const Permutation& sigma)
{
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (sigma[i] != i)
            return false;
    return true;
}

const SymArityOps& empty_sym()
{
    static const SymArityOps e;
    return e;
}

const ArityOps& empty_ops()
{
    static const ArityOps e;
    return e;
}

void check_projections(const FinSet& colours, const FinSet& ops, const std::vector<FinMap>& proj, std::size_t n)
{
    if (proj.size() != n + 1)
        throw Error(ErrorKind::ShapeMismatch, "arity " + std::to_string(n) + " needs " + std::to_string(n + 1) + " projections");
    for (const auto& f : proj)
        if (!f.source().identical(ops) || !f.target().identical(colours))
            throw Error(ErrorKind::ShapeMismatch, "projection has the wrong source or target");
}

}  // namespace

std::vector<Permutation> all_permutations(std::size_t n)
{
    std::vector<Permutation> out;
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<std::size_t> transposition_word(const Permutation& sigma)
{
    Permutation w = sigma;
    std::vector<std::size_t> rec;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] > w[i + 1]) {
                std::swap(w[i], w[i + 1]);
                rec.push_back(i);
                changed = true;
            }
    }
    std::reverse(rec.begin(), rec.end());
    return rec;
}

const SymArityOps& Collection::at(std::size_t n) const
{
    auto it = arities_.find(n);
    return it == arities_.end() ? empty_sym() : it->second;
}

std::size_t Collection::act(std::size_t n, std::size_t x, const Permutation& sigma) const
{
    const auto& a = at(n);
    for (auto i : transposition_word(sigma))
        x = a.generators[i](x);
    return x;
}

std::vector<std::size_t> Collection::orbit(std::size_t n, std::size_t x) const
{
    const auto& a = at(n);
    std::set<std::size_t> seen{x};
    std::deque<std::size_t> todo{x};
    while (!todo.empty()) {
        std::size_t y = todo.front();
        todo.pop_front();
        for (const auto& g : a.generators)
            if (seen.insert(g(y)).second)
                todo.push_back(g(y));
    }
    return {seen.begin(), seen.end()};
}

std::vector<Permutation> Collection::stabiliser(std::size_t n, std::size_t x) const
{
    std::vector<Permutation> out;
    for (auto& sigma : all_permutations(n))
        if (act(n, x, sigma) == x)
            out.push_back(sigma);
    return out;
}

Collection make_collection(FinSet colours, std::map<std::size_t, SymArityOps> arities)
{
    for (auto it = arities.begin(); it != arities.end();) {
        if (it->second.ops.empty())
            it = arities.erase(it);
        else
            ++it;
    }
    for (const auto& [n, a] : arities) {
        check_projections(colours, a.ops, a.projections, n);
        std::size_t gens = n == 0 ? 0 : n - 1;
        if (a.generators.size() != gens)
            throw Error(ErrorKind::ShapeMismatch, "arity " + std::to_string(n) + " needs " + std::to_string(gens) + " generators");
        for (const auto& g : a.generators)
            if (!g.source().identical(a.ops) || !g.target().identical(a.ops) || !g.is_bijective())
                throw Error(ErrorKind::NotAFunctor, "generator is not a permutation of the operations");
        for (std::size_t x = 0; x < a.ops.size(); ++x)
            for (std::size_t i = 0; i < gens; ++i) {
                const auto& si = a.generators[i];
                if (si(si(x)) != x)
                    throw Error(ErrorKind::NotAFunctor, "generator " + std::to_string(i) + " is not an involution");
                for (std::size_t j = i + 1; j < gens; ++j) {
                    const auto& sj = a.generators[j];
                    std::size_t y = x;
                    std::size_t reps = j == i + 1 ? 3 : 2;
                    for (std::size_t r = 0; r < reps; ++r)
                        y = sj(si(y));
                    if (y != x)
                        throw Error(ErrorKind::NotAFunctor, "generators violate the braid relations");
                }
                for (std::size_t k = 0; k < n; ++k) {
                    std::size_t sk = k == i ? i + 1 : k == i + 1 ? i : k;
                    if (a.projections[k](si(x)) != a.projections[sk](x))
                        throw Error(ErrorKind::NotAFunctor, "action does not permute the input colours");
                }
                if (a.projections[n](si(x)) != a.projections[n](x))
                    throw Error(ErrorKind::NotAFunctor, "action changes the output colour");
            }
    }
    Collection c;
    c.colours_ = std::move(colours);
    c.arities_ = std::move(arities);
    return c;
}

bool operator==(const Collection& a, const Collection& b)
{
    if (!a.colours_.identical(b.colours_) || a.arities_.size() != b.arities_.size())
        return false;
    for (const auto& [n, x] : a.arities_) {
        auto it = b.arities_.find(n);
        if (it == b.arities_.end())
            return false;
        const auto& y = it->second;
        if (!x.ops.identical(y.ops))
            return false;
        for (std::size_t i = 0; i < x.projections.size(); ++i)
            if (!(x.projections[i] == y.projections[i]))
                return false;
        for (std::size_t i = 0; i < x.generators.size(); ++i)
            if (!(x.generators[i] == y.generators[i]))
                return false;
    }
    return true;
}

const ArityOps& NonSymCollection::at(std::size_t n) const
{
    auto it = arities_.find(n);
    return it == arities_.end() ? empty_ops() : it->second;
}

NonSymCollection make_nonsym_collection(FinSet colours, std::map<std::size_t, ArityOps> arities)
{
    for (auto it = arities.begin(); it != arities.end();) {
        if (it->second.ops.empty())
            it = arities.erase(it);
        else
            ++it;
    }
    for (const auto& [n, a] : arities)
        check_projections(colours, a.ops, a.projections, n);
    NonSymCollection c;
    c.colours_ = std::move(colours);
    c.arities_ = std::move(arities);
    return c;
}

NonSymCollection nonsym_from_ops(const FinSet& colours,
                                 const std::vector<std::tuple<std::string, std::vector<std::string>, std::string>>& ops)
{
    std::map<std::size_t, std::vector<std::string>> names;
    std::map<std::size_t, std::vector<std::vector<std::size_t>>> cols;
    for (const auto& [name, in, out] : ops) {
        std::size_t n = in.size();
        names[n].push_back(name);
        auto& c = cols[n];
        c.resize(n + 1);
        for (std::size_t i = 0; i < n; ++i)
            c[i].push_back(colours.index_of(in[i]));
        c[n].push_back(colours.index_of(out));
    }
    std::map<std::size_t, ArityOps> arities;
    for (auto& [n, list] : names) {
        ArityOps a;
        a.ops = FinSet(list);
        for (auto& img : cols[n])
            a.projections.emplace_back(a.ops, colours, img);
        arities.emplace(n, std::move(a));
    }
    return make_nonsym_collection(colours, std::move(arities));
}

namespace {

// Elements indexed by (perm index, base element); action swaps perm entries.
SymArityOps build_sym(const FinSet& colours, std::size_t n, std::size_t base_count,
                      const std::function<std::string(const Permutation&, std::size_t)>& label,
                      const std::function<std::size_t(const Permutation&, std::size_t, std::size_t)>& col)
{
    auto perms = all_permutations(n);
    std::map<Permutation, std::size_t> perm_index;
    for (std::size_t k = 0; k < perms.size(); ++k)
        perm_index.emplace(perms[k], k);
    auto index = [&](std::size_t x, std::size_t k) { return x * perms.size() + k; };
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> proj(n + 1);
    for (std::size_t x = 0; x < base_count; ++x)
        for (const auto& p : perms) {
            labels.push_back(label(p, x));
            for (std::size_t i = 0; i <= n; ++i)
                proj[i].push_back(col(p, x, i));
        }
    SymArityOps a;
    a.ops = FinSet(std::move(labels));
    for (auto& img : proj)
        a.projections.emplace_back(a.ops, colours, std::move(img));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::vector<std::size_t> img(a.ops.size());
        for (std::size_t x = 0; x < base_count; ++x)
            for (std::size_t k = 0; k < perms.size(); ++k) {
                Permutation q = perms[k];
                std::swap(q[i], q[i + 1]);
                img[index(x, k)] = index(x, perm_index.at(q));
            }
        a.generators.emplace_back(a.ops, a.ops, std::move(img));
    }
    return a;
}

}  // namespace

Collection nerve_R0(const PolyEndo& p)
{
    std::map<std::size_t, std::vector<std::size_t>> nodes_by_arity;
    for (std::size_t b = 0; b < p.p1().size(); ++b)
        nodes_by_arity[p.arity(b)].push_back(b);
    std::map<std::size_t, SymArityOps> arities;
    for (const auto& [n, nodes] : nodes_by_arity) {
        auto label = [&](const Permutation& q, std::size_t x) {
            std::size_t b = nodes[x];
            std::string out = "(" + p.p1()[b] + ":[";
            for (std::size_t i = 0; i < n; ++i)
                out += (i ? "," : "") + p.p2()[p.fibre(b)[q[i]]];
            return out + "])";
        };
        auto col = [&](const Permutation& q, std::size_t x, std::size_t i) {
            std::size_t b = nodes[x];
            return i == n ? p.t()(b) : p.s()(p.fibre(b)[q[i]]);
        };
        arities.emplace(n, build_sym(p.p0(), n, nodes.size(), label, col));
    }
    return make_collection(p.p0(), std::move(arities));
}

Collection symmetrise(const NonSymCollection& c)
{
    std::map<std::size_t, SymArityOps> arities;
    for (const auto& [n, a] : c.arities()) {
        const auto& ops = a.ops;
        const auto& proj = a.projections;
        auto label = [&](const Permutation& q, std::size_t x) { return "(" + perm_label(q) + "," + ops[x] + ")"; };
        auto col = [&, n = n](const Permutation& q, std::size_t x, std::size_t i) {
            return i == n ? proj[n](x) : proj[q[i]](x);
        };
        arities.emplace(n, build_sym(c.colours(), n, ops.size(), label, col));
    }
    return make_collection(c.colours(), std::move(arities));
}

PolyEndo nonsym_to_polyend(const NonSymCollection& c)
{
    std::vector<std::string> l1, l2;
    std::vector<std::size_t> s, p, t;
    for (const auto& [n, a] : c.arities())
        for (std::size_t x = 0; x < a.ops.size(); ++x) {
            for (std::size_t i = 0; i < n; ++i) {
                l2.push_back("(" + a.ops[x] + "," + std::to_string(i) + ")");
                s.push_back(a.projections[i](x));
                p.push_back(l1.size());
            }
            t.push_back(a.projections[n](x));
            l1.push_back(a.ops[x]);
        }
    return make_poly(c.colours(), FinSet(std::move(l1)), FinSet(std::move(l2)), s, p, t);
}

NonSymCollection forget_symmetry(const Collection& c)
{
    std::map<std::size_t, ArityOps> arities;
    for (const auto& [n, a] : c.arities())
        arities.emplace(n, ArityOps{a.ops, a.projections});
    return make_nonsym_collection(c.colours(), std::move(arities));
}

std::optional<FlatWitness> flatness_witness(const Collection& c)
{
    for (const auto& [n, a] : c.arities())
        for (std::size_t x = 0; x < a.ops.size(); ++x) {
            if (c.orbit(n, x).size() == factorial(n))
                continue;
            for (auto& sigma : c.stabiliser(n, x))
                if (!is_identity(sigma))
                    return FlatWitness{n, x, sigma};
        }
    return std::nullopt;
}

bool is_flat(const Collection& c)
{
    return !flatness_witness(c).has_value();
}

PolyEndo flat_to_polyend(const Collection& c)
{
    if (auto w = flatness_witness(c))
        throw Error(ErrorKind::NotFlat, "element " + c.at(w->arity).ops[w->element] + " is fixed by " + perm_label(w->stabiliser));
    std::vector<std::string> l1, l2;
    std::vector<std::size_t> s, p, t;
    for (const auto& [n, a] : c.arities())
        for (std::size_t x = 0; x < a.ops.size(); ++x) {
            if (c.orbit(n, x).front() != x)
                continue;
            for (std::size_t i = 0; i < n; ++i) {
                l2.push_back("(" + a.ops[x] + "," + std::to_string(i) + ")");
                s.push_back(a.projections[i](x));
                p.push_back(l1.size());
            }
            t.push_back(a.projections[n](x));
            l1.push_back(a.ops[x]);
        }
    return make_poly(c.colours(), FinSet(std::move(l1)), FinSet(std::move(l2)), s, p, t);
}

namespace {

// Map x.sigma -> y.sigma over all sigma; nullopt when not well defined.
std::optional<std::map<std::size_t, std::size_t>> orbit_map(const Collection& a, const Collection& b, std::size_t n,
                                                            std::size_t x, std::size_t y)
{
    std::map<std::size_t, std::size_t> m;
    for (auto& sigma : all_permutations(n)) {
        std::size_t u = a.act(n, x, sigma), v = b.act(n, y, sigma);
        auto [it, fresh] = m.emplace(u, v);
        if (!fresh && it->second != v)
            return std::nullopt;
    }
    return m;
}

bool colours_match(const Collection& a, const Collection& b, std::size_t n, std::size_t x, std::size_t y,
                   const std::vector<std::size_t>& f)
{
    for (std::size_t i = 0; i <= n; ++i)
        if (f[a.colour(n, x, i)] != b.colour(n, y, i))
            return false;
    return true;
}

std::vector<std::size_t> orbit_reps(const Collection& c, std::size_t n)
{
    std::vector<std::size_t> reps;
    for (std::size_t x = 0; x < c.at(n).ops.size(); ++x)
        if (c.orbit(n, x).front() == x)
            reps.push_back(x);
    return reps;
}

bool match_orbits(const std::vector<std::vector<bool>>& ok, std::size_t i, std::vector<bool>& used)
{
    if (i == ok.size())
        return true;
    for (std::size_t j = 0; j < used.size(); ++j)
        if (!used[j] && ok[i][j]) {
            used[j] = true;
            if (match_orbits(ok, i + 1, used))
                return true;
            used[j] = false;
        }
    return false;
}

}  // namespace

bool isomorphic(const Collection& a, const Collection& b)
{
    if (a.colours().size() != b.colours().size() || a.arities().size() != b.arities().size())
        return false;
    for (const auto& [n, x] : a.arities())
        if (b.at(n).ops.size() != x.ops.size())
            return false;
    Permutation f(a.colours().size());
    std::iota(f.begin(), f.end(), 0);
    do {
        bool all = true;
        for (const auto& [n, ops] : a.arities()) {
            auto ra = orbit_reps(a, n), rb = orbit_reps(b, n);
            if (ra.size() != rb.size()) {
                all = false;
                break;
            }
            std::vector<std::vector<bool>> ok(ra.size(), std::vector<bool>(rb.size(), false));
            for (std::size_t i = 0; i < ra.size(); ++i)
                for (std::size_t j = 0; j < rb.size(); ++j)
                    for (auto y : b.orbit(n, rb[j])) {
                        if (!colours_match(a, b, n, ra[i], y, f))
                            continue;
                        auto m = orbit_map(a, b, n, ra[i], y);
                        std::set<std::size_t> image;
                        if (m)
                            for (auto& [u, v] : *m)
                                image.insert(v);
                        if (m && image.size() == m->size()) {
                            ok[i][j] = true;
                            break;
                        }
                    }
            std::vector<bool> used(rb.size(), false);
            if (!match_orbits(ok, 0, used)) {
                all = false;
                break;
            }
        }
        if (all)
            return true;
    } while (std::next_permutation(f.begin(), f.end()));
    return false;
}

namespace {

template <class Fn>
std::size_t sum_over_colour_maps(std::size_t from, std::size_t to, Fn per_map)
{
    if (from > 0 && to == 0)
        return 0;
    std::vector<std::size_t> f(from, 0);
    std::size_t total = 0;
    while (true) {
        total += per_map(f);
        std::size_t i = 0;
        while (i < from && ++f[i] == to)
            f[i++] = 0;
        if (i == from)
            break;
    }
    return total;
}

}  // namespace

std::size_t count_maps(const Collection& source, const Collection& target)
{
    return sum_over_colour_maps(source.colours().size(), target.colours().size(), [&](const std::vector<std::size_t>& f) {
        std::size_t product = 1;
        for (const auto& [n, a] : source.arities()) {
            for (auto x : orbit_reps(source, n)) {
                std::size_t choices = 0;
                for (std::size_t y = 0; y < target.at(n).ops.size(); ++y)
                    if (colours_match(source, target, n, x, y, f) && orbit_map(source, target, n, x, y))
                        ++choices;
                product *= choices;
            }
        }
        return product;
    });
}

std::size_t count_maps(const NonSymCollection& source, const NonSymCollection& target)
{
    return sum_over_colour_maps(source.colours().size(), target.colours().size(), [&](const std::vector<std::size_t>& f) {
        std::size_t product = 1;
        for (const auto& [n, a] : source.arities())
            for (std::size_t x = 0; x < a.ops.size(); ++x) {
                std::size_t choices = 0;
                const auto& b = target.at(n);
                for (std::size_t y = 0; y < b.ops.size(); ++y) {
                    bool ok = true;
                    for (std::size_t i = 0; i <= n; ++i)
                        ok = ok && f[a.projections[i](x)] == b.projections[i](y);
                    choices += ok;
                }
                product *= choices;
            }
        return product;
    });
}

}  // namespace poly

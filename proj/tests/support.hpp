#pragma once

// Brute-force oracles and generators shared by the test suites. The oracles
// use plain parent arrays and strings, never the library.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "polytree/collection.hpp"
#include "polytree/polyend.hpp"
#include "polytree/ptree.hpp"

namespace oracle {

inline std::size_t factorial(std::size_t n)
{
    std::size_t f = 1;
    for (std::size_t i = 2; i <= n; ++i)
        f *= i;
    return f;
}

// Nested-parenthesis code of vertex v: "|" for a leaf, "(...)" for a node.
// A childless vertex is a stump exactly when stump[v] is set.
inline std::string unordered_code(std::size_t v, const std::vector<std::vector<std::size_t>>& children,
                                  const std::vector<bool>& stump)
{
    if (children[v].empty() && !stump[v])
        return "|";
    std::vector<std::string> parts;
    for (auto c : children[v])
        parts.push_back(unordered_code(c, children, stump));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts)
        out += p;
    return out + ")";
}

// Distinct rooted unordered trees with k edges: every edge is a vertex, a vertex
// with children carries a node, and a childless vertex may carry a stump.
inline std::set<std::string> rooted_trees(std::size_t k, bool stumps)
{
    std::set<std::string> out;
    std::vector<std::size_t> parent(k, 0);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == k) {
            std::vector<std::vector<std::size_t>> children(k);
            for (std::size_t v = 1; v < k; ++v)
                children[parent[v]].push_back(v);
            std::vector<std::size_t> childless;
            for (std::size_t v = 0; v < k; ++v)
                if (children[v].empty())
                    childless.push_back(v);
            std::size_t choices = stumps ? (std::size_t{1} << childless.size()) : 1;
            for (std::size_t mask = 0; mask < choices; ++mask) {
                std::vector<bool> stump(k, false);
                for (std::size_t j = 0; j < childless.size(); ++j)
                    stump[childless[j]] = (mask >> j) & 1;
                out.insert(unordered_code(0, children, stump));
            }
            return;
        }
        for (std::size_t p = 0; p < i; ++p) {
            parent[i] = p;
            go(i + 1);
        }
    };
    if (k > 0)
        go(1);
    return out;
}

// Plane trees with k edges and no stumps, children ordered.
inline std::set<std::string> plane_trees(std::size_t k)
{
    std::set<std::string> out;
    if (k == 0)
        return out;
    if (k == 1) {
        out.insert("|");
        return out;
    }
    // Root node with an ordered list of branches of total size k - 1.
    std::function<void(std::size_t, std::string)> branches = [&](std::size_t left, std::string acc) {
        if (left == 0) {
            if (acc.size() > 1)
                out.insert(acc + ")");
            return;
        }
        for (std::size_t first = 1; first <= left; ++first)
            for (const auto& b : plane_trees(first))
                branches(left - first, acc + b);
    };
    branches(k - 1, "(");
    return out;
}

// Plane trees with k edges, stumps allowed: a leaf, a stump, or a node over a nonempty branch list.
inline std::size_t plane_trees_with_stumps(std::size_t k)
{
    if (k == 0)
        return 0;
    if (k == 1)
        return 2;
    // Ordered branch sequences by total size.
    std::vector<std::size_t> seq(k, 0);
    seq[0] = 1;
    for (std::size_t total = 1; total < k; ++total)
        for (std::size_t first = 1; first <= total; ++first)
            seq[total] += plane_trees_with_stumps(first) * seq[total - first];
    return seq[k - 1];
}

// Order-preserving maps {0..m-1} -> {0..n-1}, by enumerating all functions.
inline std::size_t monotone_maps(std::size_t m, std::size_t n)
{
    std::size_t count = 0;
    std::vector<std::size_t> f(m, 0);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == m) {
            for (std::size_t j = 1; j < m; ++j)
                if (f[j - 1] > f[j])
                    return;
            ++count;
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            f[i] = v;
            go(i + 1);
        }
    };
    go(0);
    return count;
}

}  // namespace oracle

namespace gen {

// Random endofunctor with the given numbers of colours and nodes, arities at most max_arity.
inline poly::PolyEndo random_poly(std::mt19937& rng, std::size_t colours, std::size_t nodes, std::size_t max_arity)
{
    std::uniform_int_distribution<std::size_t> colour(0, colours - 1), arity(0, max_arity);
    std::vector<std::size_t> s, p, t;
    std::vector<std::string> inputs;
    for (std::size_t b = 0; b < nodes; ++b) {
        t.push_back(colour(rng));
        std::size_t n = arity(rng);
        for (std::size_t i = 0; i < n; ++i) {
            inputs.push_back("b" + std::to_string(b) + "." + std::to_string(i));
            s.push_back(colour(rng));
            p.push_back(b);
        }
    }
    return poly::make_poly(poly::FinSet::range("c", colours), poly::FinSet::range("b", nodes), poly::FinSet(inputs),
                           s, p, t);
}

inline std::vector<poly::PolyEndo> random_polys(std::size_t count, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> colours(1, 2), nodes(1, 4);
    std::vector<poly::PolyEndo> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t c = colours(rng), n = nodes(rng);
        out.push_back(random_poly(rng, c, n, 3));
    }
    return out;
}

inline poly::NonSymCollection random_nonsym(std::mt19937& rng)
{
    std::uniform_int_distribution<std::size_t> colours(1, 2), ops(1, 4), arity(0, 3);
    std::size_t nc = colours(rng);
    std::uniform_int_distribution<std::size_t> colour(0, nc - 1);
    auto cs = poly::FinSet::range("c", nc);
    std::vector<std::tuple<std::string, std::vector<std::string>, std::string>> list;
    std::size_t n = ops(rng);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> ins(arity(rng));
        for (auto& in : ins)
            in = cs[colour(rng)];
        list.emplace_back("o" + std::to_string(i), ins, cs[colour(rng)]);
    }
    return poly::nonsym_from_ops(cs, list);
}

// One colour, one binary operation fixed by the swap.
inline poly::Collection commutative_binary()
{
    using namespace poly;
    FinSet colours({std::string("x")});
    FinSet ops({std::string("m")});
    SymArityOps a;
    a.ops = ops;
    for (int i = 0; i < 3; ++i)
        a.projections.push_back(FinMap(ops, colours, {0}));
    a.generators.push_back(FinMap::identity(ops));
    return make_collection(colours, {{2, a}});
}

}  // namespace gen

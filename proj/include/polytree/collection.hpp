#pragma once

#include <map>
#include <optional>
#include <vector>

#include "polytree/polyend.hpp"

namespace poly {

using Permutation = std::vector<std::size_t>;

std::vector<Permutation> all_permutations(std::size_t n);
// Word of adjacent transpositions s_i (swapping i and i+1) whose product, read left to right, is sigma.
std::vector<std::size_t> transposition_word(const Permutation& sigma);

struct ArityOps {
    FinSet ops;
    // Input colours 0..n-1, then the output colour.
    std::vector<FinMap> projections;
};

// Operations of one arity in a symmetric collection. generators[i] is the right action of s_i.
struct SymArityOps {
    FinSet ops;
    std::vector<FinMap> projections;
    std::vector<FinMap> generators;
};

// Right action: col_i(x.sigma) = col_sigma(i)(x). Only nonempty arities are stored.
class Collection {
public:
    const FinSet& colours() const { return colours_; }
    const std::map<std::size_t, SymArityOps>& arities() const { return arities_; }
    // Empty ops for an absent arity.
    const SymArityOps& at(std::size_t n) const;

    std::size_t act(std::size_t n, std::size_t x, const Permutation& sigma) const;
    std::vector<std::size_t> orbit(std::size_t n, std::size_t x) const;
    std::vector<Permutation> stabiliser(std::size_t n, std::size_t x) const;
    std::size_t colour(std::size_t n, std::size_t x, std::size_t i) const { return at(n).projections[i](x); }

    friend Collection make_collection(FinSet colours, std::map<std::size_t, SymArityOps> arities);
    friend bool operator==(const Collection& a, const Collection& b);

private:
    FinSet colours_;
    std::map<std::size_t, SymArityOps> arities_;
};

// Throws NotAFunctor unless the generators satisfy the Coxeter relations and permute the projections.
Collection make_collection(FinSet colours, std::map<std::size_t, SymArityOps> arities);
// Same labels, projections and actions.
bool operator==(const Collection& a, const Collection& b);

class NonSymCollection {
public:
    const FinSet& colours() const { return colours_; }
    const std::map<std::size_t, ArityOps>& arities() const { return arities_; }
    const ArityOps& at(std::size_t n) const;
    std::size_t colour(std::size_t n, std::size_t x, std::size_t i) const { return at(n).projections[i](x); }

    friend NonSymCollection make_nonsym_collection(FinSet colours, std::map<std::size_t, ArityOps> arities);

private:
    FinSet colours_;
    std::map<std::size_t, ArityOps> arities_;
};

NonSymCollection make_nonsym_collection(FinSet colours, std::map<std::size_t, ArityOps> arities);
// Builds ops from (name, input colours, output colour) triples.
NonSymCollection nonsym_from_ops(const FinSet& colours,
                                 const std::vector<std::tuple<std::string, std::vector<std::string>, std::string>>& ops);

// Elements (b:[e_1,...,e_n]) for each node b and ordering of its fibre.
Collection nerve_R0(const PolyEndo& p);
// Elements ([s_1...s_n],x) with (sigma,x).tau = (sigma tau, x).
Collection symmetrise(const NonSymCollection& c);
// Nodes are the operations, inputs (x,i) in order: the planar endofunctor of c.
PolyEndo nonsym_to_polyend(const NonSymCollection& c);
NonSymCollection forget_symmetry(const Collection& c);

struct FlatWitness {
    std::size_t arity = 0;
    std::size_t element = 0;
    Permutation stabiliser;
};

// nullopt when every stabiliser is trivial.
std::optional<FlatWitness> flatness_witness(const Collection& c);
bool is_flat(const Collection& c);
// Node per orbit, represented by the least element. Throws NotFlat.
PolyEndo flat_to_polyend(const Collection& c);

bool isomorphic(const Collection& a, const Collection& b);

// Brute-force counts of collection maps, colours included.
std::size_t count_maps(const Collection& source, const Collection& target);
std::size_t count_maps(const NonSymCollection& source, const NonSymCollection& target);

}  // namespace poly

#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "polytree/ptree.hpp"

namespace poly {

// Carrier P0 <- tr'(P) -> tr(P) -> P0. For a tree T the carrier uses sub(T) and
// sub'(T) and is exact; for a general P it is truncated at a node bound.
// Leaves of every carrier node are listed in depth-first fibre order.
class FreeMonad {
public:
    const PolyEndo& base() const { return base_; }
    const PolyEndo& carrier() const { return carrier_; }
    bool exact() const { return exact_; }
    std::size_t max_nodes() const { return max_nodes_; }

    // Number of nodes of the tree named by a carrier node.
    std::size_t weight(std::size_t node) const { return weight_[node]; }
    std::size_t unit_node(std::size_t colour) const { return unit_[colour]; }
    // Grafts branches[j] onto the j-th leaf of node; npos when the result is beyond the bound.
    std::size_t graft(std::size_t node, const std::vector<std::size_t>& branches) const;

    PolyMap unit() const;
    ComposeBudget budget() const;
    Composite square() const;
    // Grafting of trees of trees; ff must be compose(carrier, carrier, budget).
    PolyMap multiplication(const Composite& ff) const;

    const std::optional<PTreeClassSet>& classes() const { return classes_; }
    const std::optional<Tree>& tree() const { return tree_; }
    const std::vector<Subtree>& subtrees() const { return subtrees_; }

    friend FreeMonad free_monad(const PolyEndo& p, std::size_t max_nodes);
    friend FreeMonad free_monad(const Tree& t);

private:
    FreeMonad() = default;

    PolyEndo base_;
    PolyEndo carrier_;
    bool exact_ = false;
    std::size_t max_nodes_ = npos;
    std::vector<std::size_t> weight_, unit_;
    std::optional<PTreeClassSet> classes_;
    std::optional<Tree> tree_;
    std::vector<Subtree> subtrees_;
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> subtree_index_;
};

FreeMonad free_monad(const PolyEndo& p, std::size_t max_nodes);
FreeMonad free_monad(const Tree& t);

struct MonadLawReport {
    bool multiplication_valid = false;
    bool left_unit = false;
    bool right_unit = false;
    bool associativity = false;
    std::size_t checked = 0;

    bool ok() const { return multiplication_valid && left_unit && right_unit && associativity; }
};

MonadLawReport check_monad_laws(const FreeMonad& m);

// A map S -> T-bar: edge map plus a subtree of T for each node of S, whose leaves
// are the images of the node's inputs.
class OmegaMorphism {
public:
    const Tree& source() const { return source_; }
    const Tree& target() const { return target_; }
    const std::vector<std::size_t>& edge_map() const { return edge_map_; }
    const std::vector<Subtree>& node_images() const { return node_images_; }

    // phi_1 on sub(S).
    Subtree image(const Subtree& r) const;
    Subtree image_of_whole() const;

    friend bool operator==(const OmegaMorphism& a, const OmegaMorphism& b) { return a.edge_map_ == b.edge_map_; }

    friend OmegaMorphism make_omega_morphism(const Tree&, const Tree&, std::vector<std::size_t>, std::vector<Subtree>);

private:
    OmegaMorphism(Tree s, Tree t, std::vector<std::size_t> e, std::vector<Subtree> n)
        : source_(std::move(s)), target_(std::move(t)), edge_map_(std::move(e)), node_images_(std::move(n))
    {
    }

    Tree source_, target_;
    std::vector<std::size_t> edge_map_;
    std::vector<Subtree> node_images_;
};

// Throws NotATreeMorphism when the data do not define a morphism.
OmegaMorphism make_omega_morphism(const Tree& s, const Tree& t, std::vector<std::size_t> edge_map,
                                  std::vector<Subtree> node_images);
// Node images recovered from the boundary of each node.
OmegaMorphism omega_from_edges(const Tree& s, const Tree& t, const std::vector<std::size_t>& edge_map);
OmegaMorphism omega_from_embedding(const Tree& s, const Tree& t, const PolyMap& embedding);
OmegaMorphism omega_identity(const Tree& t);
OmegaMorphism compose(const OmegaMorphism& g, const OmegaMorphism& f);

std::vector<OmegaMorphism> hom_omega(const Tree& s, const Tree& t);

// The full diagram on sub and sub', indexed as enumerate_subtrees / enumerate_marked_subtrees.
struct MapInTree {
    std::vector<Subtree> sub_source, sub_target;
    std::vector<std::pair<Subtree, std::size_t>> marked_source, marked_target;
    std::vector<std::size_t> phi0, phi1, phi2;
};

MapInTree materialize(const OmegaMorphism& phi);
// The diagram as a map of free-monad carriers.
PolyMap carrier_map(const OmegaMorphism& phi, const FreeMonad& source, const FreeMonad& target);

bool is_boundary_preserving(const OmegaMorphism& phi);
bool is_injective(const OmegaMorphism& phi);
bool is_surjective(const OmegaMorphism& phi);
bool is_free(const OmegaMorphism& phi);
// The seven equivalent characterisations of free maps, in order.
std::array<bool, 7> free_conditions(const OmegaMorphism& phi);

struct Factorisation {
    Tree middle;
    OmegaMorphism first;
    OmegaMorphism second;
};

// Boundary-preserving map onto the image subtree, then its inclusion.
Factorisation factor_generic_free(const OmegaMorphism& phi);
// Deletion of the nodes sent to trivial subtrees, then an injection.
Factorisation factor_surj_inj(const OmegaMorphism& phi);

struct TripleFactorisation {
    Tree first_middle;
    Tree second_middle;
    OmegaMorphism surjection;
    OmegaMorphism boundary_preserving_injection;
    OmegaMorphism free;
};

TripleFactorisation triple_factor(const OmegaMorphism& phi);

// An element of the free monad: a carrier node seen as a map from a one-node tree.
struct ElementFactorisation {
    PTree middle;
    OmegaMorphism generic;
};

ElementFactorisation factor_element(const FreeMonad& m, std::size_t carrier_node);

std::vector<OmegaMorphism> boundary_preserving_maps(const Tree& one_node, const Tree& r);
std::size_t count_boundary_preserving(const Tree& one_node, const Tree& r);

struct Contraction {
    Tree tree;
    OmegaMorphism map;
};

// Merged node is labelled "(upper,lower)". Throws NotInnerEdge.
Contraction contract(const Tree& t, std::size_t inner_edge);
Contraction contract_all(const Tree& t, const std::vector<std::size_t>& inner_edges);

struct GenericInjection {
    std::vector<std::size_t> hit_inner_edges;
    Contraction contraction;
};

struct GenericInjectionPoset {
    std::vector<std::size_t> inner_edges;
    std::vector<GenericInjection> elements;
    // leq[i][j]: element i factors through element j.
    std::vector<std::vector<bool>> leq;
};

struct ReducedCover {
    std::vector<std::size_t> cut_edges;
    std::vector<Subtree> members;
};

struct ReducedCoverPoset {
    std::vector<std::size_t> inner_edges;
    std::vector<ReducedCover> elements;
    // leq[i][j]: cover i refines cover j.
    std::vector<std::vector<bool>> leq;
};

// Both throw TrivialTree. Elements are indexed by subsets of inner edges as bitmasks.
GenericInjectionPoset generic_injections(const Tree& t);
ReducedCoverPoset reduced_covers(const Tree& t);

}  // namespace poly

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polytree/polyend.hpp"

namespace poly {

// A certified tree: a PolyEndo satisfying the four tree axioms. Edges are P0,
// nodes P1, marked inputs P2. Copies share storage.
class Tree {
public:
    const PolyEndo& poly() const { return rep_->poly; }
    const FinSet& edges() const { return poly().p0(); }
    const FinSet& nodes() const { return poly().p1(); }
    const FinSet& marked() const { return poly().p2(); }

    std::size_t edge_count() const { return edges().size(); }
    std::size_t node_count() const { return nodes().size(); }
    std::size_t leaf_count() const { return rep_->leaves.size(); }
    bool is_trivial() const { return node_count() == 0; }

    std::size_t root() const { return rep_->root; }
    const std::vector<std::size_t>& leaves() const { return rep_->leaves; }
    const FinMap& sigma() const { return rep_->sigma; }

    // Node with output x, or npos for a leaf.
    std::size_t producer(std::size_t x) const { return rep_->producer[x]; }
    // Marked input m with s(m) = x, or npos for the root.
    std::size_t consumer(std::size_t x) const { return rep_->consumer[x]; }
    // Node having x as an input, or npos for the root.
    std::size_t consuming_node(std::size_t x) const;
    std::size_t output(std::size_t b) const { return poly().t()(b); }
    // Input edges of b in fibre order.
    const std::vector<std::size_t>& inputs(std::size_t b) const { return rep_->inputs[b]; }
    std::size_t arity(std::size_t b) const { return rep_->inputs[b].size(); }
    // Node below b, or npos when b is the root node.
    std::size_t parent_node(std::size_t b) const { return consuming_node(output(b)); }

    bool is_leaf(std::size_t x) const { return producer(x) == npos; }
    bool is_inner(std::size_t x) const { return producer(x) != npos && x != root(); }
    std::vector<std::size_t> inner_edges() const;

    std::size_t depth(std::size_t x) const { return rep_->depth[x]; }
    bool leq(std::size_t x, std::size_t y) const;
    bool comparable(std::size_t x, std::size_t y) const { return leq(x, y) || leq(y, x); }
    // Throws DistanceUndefined for incomparable edges.
    std::size_t distance(std::size_t x, std::size_t y) const;
    std::size_t join(std::size_t x, std::size_t y) const;

    struct Rep {
        PolyEndo poly;
        std::size_t root = 0;
        std::vector<std::size_t> leaves;
        FinMap sigma;
        std::vector<std::size_t> producer, consumer, depth;
        std::vector<std::vector<std::size_t>> inputs;
    };

private:
    friend Tree certify_tree(const PolyEndo& p);
    std::shared_ptr<const Rep> rep_;
};

// Throws TreeAxiomError naming the violated axiom.
Tree certify_tree(const PolyEndo& p);

// E+1 <- E -> 1 -> E+1; the root is named "root" unless an input already is.
Tree one_node_tree(const FinSet& inputs);
Tree trivial_tree(const std::string& edge = "r");

class Subtree {
public:
    // Trivial subtree at an edge.
    Subtree(Tree ambient, std::size_t edge);
    // Nontrivial subtree; throws NotASubtree unless the node set is admissible.
    Subtree(Tree ambient, std::vector<std::size_t> nodes);

    const Tree& ambient() const { return ambient_; }
    bool is_trivial() const { return nodes_.empty(); }
    std::size_t root() const { return root_; }
    const std::vector<std::size_t>& nodes() const { return nodes_; }
    const std::vector<std::size_t>& edges() const { return edges_; }
    const std::vector<std::size_t>& marked() const { return marked_; }
    const std::vector<std::size_t>& leaves() const { return leaves_; }
    bool contains_edge(std::size_t x) const;
    bool contains_node(std::size_t b) const;

    // Materialised with the ambient labels, sets in ambient order.
    Tree tree() const;
    PolyMap inclusion() const;
    // Index of an ambient edge inside tree().edges().
    std::size_t local_edge(std::size_t x) const;

    friend bool operator==(const Subtree& a, const Subtree& b)
    {
        return a.root_ == b.root_ && a.nodes_ == b.nodes_;
    }
    friend bool operator<(const Subtree& a, const Subtree& b)
    {
        if (a.nodes_.size() != b.nodes_.size())
            return a.nodes_.size() < b.nodes_.size();
        if (a.nodes_ != b.nodes_)
            return a.nodes_ < b.nodes_;
        return a.root_ < b.root_;
    }

private:
    Tree ambient_;
    std::size_t root_;
    std::vector<std::size_t> nodes_, edges_, marked_, leaves_;
};

std::vector<Subtree> enumerate_subtrees(const Tree& t);
// sub'(T): each subtree paired with one of its leaves.
std::vector<std::pair<Subtree, std::size_t>> enumerate_marked_subtrees(const Tree& t);
// Subtree spanned by an admissible node set, or by nothing (trivial at `edge`).
Subtree one_node_subtree(const Tree& t, std::size_t b);
Subtree whole_subtree(const Tree& t);

Subtree ideal_subtree(const Tree& t, std::size_t z);
Subtree prune(const Tree& t, std::size_t z);

struct Grafting {
    Tree tree;
    PolyMap from_upper;  // S, glued at its root
    PolyMap from_lower;  // T, glued at a leaf
};

// Throws NotALeaf.
Grafting graft(const Tree& s, const Tree& t, std::size_t leaf_of_t);

struct Decomposition {
    bool trivial = true;
    std::size_t edge = 0;
    std::size_t node = npos;
    // (marked input e of the root node, ideal subtree at s(e)).
    std::vector<std::pair<std::size_t, Subtree>> branches;
};

Decomposition recursive_decompose(const Tree& t);
Tree regraft(const Tree& t, const Decomposition& d);

// Children sorted; a leaf is "|", a node "(...)".
std::string canonical_form(const Tree& t);
std::string canonical_form(const Subtree& s);
bool are_isomorphic(const Tree& a, const Tree& b);
// Canonical representative: edges r, r.0, r.1, ...; nodes v, v.0, ...; inputs i.0, ...
Tree tree_from_encoding(std::string_view encoding);
Tree canonical_representative(const Tree& t);

std::vector<PolyMap> isomorphisms(const Tree& a, const Tree& b);
std::vector<PolyMap> automorphisms(const Tree& t);

struct RootIdealFactorisation {
    Subtree middle;
    PolyMap root_preserving;
    PolyMap ideal;
};

RootIdealFactorisation factor_root_ideal(const PolyMap& phi, const Tree& s, const Tree& t);

std::vector<PolyMap> hom_temb(const Tree& s, const Tree& t);
// Embedding determined by an edge map; throws when the edge map does not extend.
PolyMap embedding_from_edges(const Tree& s, const Tree& t, const std::vector<std::size_t>& edge_map);

}  // namespace poly

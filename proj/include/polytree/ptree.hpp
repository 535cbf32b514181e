#pragma once

#include <map>
#include <string>
#include <vector>

#include "polytree/tree.hpp"

namespace poly {

struct PTree {
    Tree tree;
    PolyMap decoration;
};

// All decorations of t over p. Throws ArityUnsupported when p is a truncation
// and t has a node of arity above the truncation bound.
std::vector<PTree> decorations(const Tree& t, const PolyEndo& p);

std::size_t automorphisms_over_base(const PTree& pt);
bool is_rigid(const PTree& pt);

// Leaf "|c", node "<b>(child,...)" with children in fibre order; c and b are indices.
std::string ptree_canonical_form(const PTree& pt);

// Whether trees with nullary nodes are generated.
enum class Stumps { Exclude, Include };

struct PTreeBounds {
    std::size_t max_nodes = npos;
    std::size_t max_edges = npos;
    Stumps stumps = Stumps::Include;
};

struct PTreeClass {
    std::string code;
    std::size_t colour = 0;
    std::size_t node = npos;
    std::vector<std::size_t> children;
    std::size_t nodes = 0;
    std::size_t edges = 1;
    // Colours of the leaves in canonical order.
    std::vector<std::size_t> leaf_colours;
};

class PTreeClassSet {
public:
    PTreeClassSet(PolyEndo base, PTreeBounds bounds, std::vector<PTreeClass> classes);

    const PolyEndo& base() const { return base_; }
    const PTreeBounds& bounds() const { return bounds_; }
    const std::vector<PTreeClass>& classes() const { return classes_; }
    std::size_t size() const { return classes_.size(); }
    const PTreeClass& operator[](std::size_t i) const { return classes_[i]; }
    std::size_t find(const std::string& code) const;
    // Class of a node with the given branch classes, or npos when outside the bound.
    std::size_t find_node(std::size_t b, const std::vector<std::size_t>& children) const;
    std::size_t trivial(std::size_t colour) const { return trivial_[colour]; }

    // Edges r, r.0, ...; nodes v, v.0, ...; inputs i.0, ... by fibre position.
    PTree materialize(std::size_t i) const;

private:
    PolyEndo base_;
    PTreeBounds bounds_;
    std::vector<PTreeClass> classes_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::size_t> trivial_;
};

// Fixpoint iteration W_{k+1} = P0 + P(W_k) within the bounds. At least one bound must be finite.
PTreeClassSet enumerate_ptrees(const PolyEndo& p, PTreeBounds bounds);

// Re-runs the (1+P) step on the result and decomposes every class; true when nothing new appears
// and every class decomposes to itself.
bool verify_lambek(const PTreeClassSet& w);

std::vector<Tree> undecorated_tree_classes(std::size_t max_edges, Stumps stumps);
// Encodings of undecorated_tree_classes, grouped by edge count (index 0 unused).
std::vector<std::vector<std::string>> undecorated_encodings(std::size_t max_edges, Stumps stumps);

}  // namespace poly

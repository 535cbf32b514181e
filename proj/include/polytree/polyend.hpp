#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "polytree/finset.hpp"

namespace poly {

// P0 <-s- P2 -p-> P1 -t-> P0. Copies share storage.
class PolyEndo {
public:
    PolyEndo();
    // arity_bound marks a truncation: arities above it are unknown, not absent.
    PolyEndo(FinMap s, FinMap p, FinMap t, std::optional<std::size_t> arity_bound = std::nullopt);

    const FinSet& p0() const { return rep_->s.target(); }
    const FinSet& p1() const { return rep_->t.source(); }
    const FinSet& p2() const { return rep_->s.source(); }
    const FinMap& s() const { return rep_->s; }
    const FinMap& p() const { return rep_->p; }
    const FinMap& t() const { return rep_->t; }

    // Marked inputs of node b in P2 stored order.
    const std::vector<std::size_t>& fibre(std::size_t b) const { return rep_->fibres[b]; }
    std::size_t arity(std::size_t b) const { return rep_->fibres[b].size(); }
    // Position of e inside fibre(p(e)).
    std::size_t position(std::size_t e) const { return rep_->position[e]; }
    std::optional<std::size_t> arity_bound() const { return rep_->arity_bound; }

    struct Rep {
        FinMap s, p, t;
        std::vector<std::vector<std::size_t>> fibres;
        std::vector<std::size_t> position;
        std::optional<std::size_t> arity_bound;
    };

private:
    std::shared_ptr<const Rep> rep_;
};

PolyEndo make_poly(const FinSet& p0, const FinSet& p1, const FinSet& p2, const std::vector<std::size_t>& s,
                   const std::vector<std::size_t>& p, const std::vector<std::size_t>& t);

PolyEndo identity_endofunctor(const FinSet& colours);
PolyEndo free_monoid_truncated(std::size_t max_arity);

class PolyMap {
public:
    const PolyEndo& source() const { return source_; }
    const PolyEndo& target() const { return target_; }
    const FinMap& a0() const { return a0_; }
    const FinMap& a1() const { return a1_; }
    const FinMap& a2() const { return a2_; }

    friend bool operator==(const PolyMap& a, const PolyMap& b)
    {
        return a.a0_ == b.a0_ && a.a1_ == b.a1_ && a.a2_ == b.a2_;
    }

private:
    friend PolyMap validate_map(const PolyEndo&, const PolyEndo&, FinMap, FinMap, FinMap);
    PolyMap(PolyEndo source, PolyEndo target, FinMap a0, FinMap a1, FinMap a2)
        : source_(std::move(source)), target_(std::move(target)), a0_(std::move(a0)), a1_(std::move(a1)),
          a2_(std::move(a2))
    {
    }

    PolyEndo source_, target_;
    FinMap a0_, a1_, a2_;
};

// Throws SquareNotCommuting or MiddleNotCartesian naming the first failure.
PolyMap validate_map(const PolyEndo& source, const PolyEndo& target, FinMap a0, FinMap a1, FinMap a2);
PolyMap validate_map(const PolyEndo& source, const PolyEndo& target, std::vector<std::size_t> a0,
                     std::vector<std::size_t> a1, std::vector<std::size_t> a2);
PolyMap identity_map(const PolyEndo& p);
PolyMap compose(const PolyMap& g, const PolyMap& f);

// Elements are (b, f) labelled "(b:[x1,...])" with f in fibre order; mapped to P0 by t.
struct Evaluation {
    FinMap to_colours;
    std::vector<std::size_t> node;
    std::vector<std::vector<std::size_t>> assignment;

    const FinSet& set() const { return to_colours.source(); }
};

Evaluation evaluate(const PolyEndo& p, const FinMap& x_over_colours);

// Additive weight bound on composite nodes: outer(b) + sum of inner(f(e)) <= budget.
struct ComposeBudget {
    std::function<std::size_t(std::size_t)> outer_weight;
    std::function<std::size_t(std::size_t)> inner_weight;
    std::size_t budget = npos;
};

// outer after inner. Nodes (b, f) labelled "(b:[q1,...])", inputs "(b:[q1,...]:e:e')".
struct Composite {
    PolyEndo poly;
    PolyEndo outer;
    PolyEndo inner;
    std::vector<std::size_t> outer_node;
    std::vector<std::vector<std::size_t>> inner_nodes;
    std::vector<std::array<std::size_t, 3>> input_parts;

    std::size_t find_node(std::size_t b, const std::vector<std::size_t>& f) const;
    std::size_t find_input(std::size_t node, std::size_t e, std::size_t e2) const;

    std::map<std::vector<std::size_t>, std::size_t> node_index;
    std::map<std::array<std::size_t, 3>, std::size_t> input_index;
};

Composite compose(const PolyEndo& outer, const PolyEndo& inner, const ComposeBudget* budget = nullptr);

// alpha x beta between composites; alpha and beta must agree on colours.
// Throws BoundExceeded when an image falls outside a budgeted target.
PolyMap horizontal_compose(const PolyMap& alpha, const PolyMap& beta, const Composite& source,
                           const Composite& target);

// (P o Q) o R -> P o (Q o R), where pq_r = compose(pq.poly, R) and p_qr = compose(P, qr.poly).
PolyMap associator(const Composite& pq, const Composite& qr, const Composite& pq_r, const Composite& p_qr);

// Backtracking search. `allowed` may restrict candidate images (level 0, 1, 2; source index; target index).
using IsoFilter = std::function<bool(int, std::size_t, std::size_t)>;
std::optional<PolyMap> find_isomorphism(const PolyEndo& a, const PolyEndo& b, const IsoFilter& allowed = {});

// True when the evaluation square along u over X is a pullback, checked elementwise.
bool evaluation_is_cartesian(const PolyMap& u, const FinMap& x_over_colours);

struct ElementsCategory {
    PolyEndo base;
    FinSet objects;
    FinSet arrows;
    FinMap source;
    FinMap target;

    std::size_t colour_object(std::size_t i) const { return i; }
    std::size_t node_object(std::size_t b) const { return base.p0().size() + b; }
    std::size_t t_arrow(std::size_t b) const { return b; }
    std::size_t input_arrow(std::size_t e) const { return base.p1().size() + e; }
};

ElementsCategory elements_category(const PolyEndo& p);

// Graph map el(Q) -> el(P) induced by u; returns (object map, arrow map).
std::pair<FinMap, FinMap> elements_functor(const PolyMap& u, const ElementsCategory& source,
                                           const ElementsCategory& target);

// A presheaf on el(P): one set per object, one map X(target) -> X(source) per arrow.
struct ElementsPresheaf {
    ElementsCategory category;
    std::vector<FinSet> values;
    std::vector<FinMap> actions;
};

struct SlicedObject {
    PolyEndo total;
    PolyMap structure_map;
};

SlicedObject make_sliced(const PolyMap& structure_map);
ElementsPresheaf slice_to_presheaf(const SlicedObject& q);
SlicedObject presheaf_to_slice(const ElementsPresheaf& x);
bool isomorphic_over_base(const SlicedObject& a, const SlicedObject& b);
bool canonical_colimit_check(const PolyEndo& p);

}  // namespace poly

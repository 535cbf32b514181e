#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polytree/collection.hpp"
#include "polytree/site.hpp"

namespace poly {

// One value per object, one map X(target) -> X(source) per arrow of the site.
class FinitePresheaf {
public:
    const SitePtr& site() const { return site_; }
    std::size_t max_edges() const { return site_->max_edges(); }
    const std::vector<FinSet>& values() const { return values_; }
    const std::vector<FinMap>& actions() const { return actions_; }
    const FinSet& value(std::size_t object) const { return values_[object]; }
    const FinMap& action(std::size_t arrow) const { return actions_[arrow]; }

    friend FinitePresheaf make_presheaf(SitePtr site, std::vector<FinSet> values, std::vector<FinMap> actions);

private:
    SitePtr site_;
    std::vector<FinSet> values_;
    std::vector<FinMap> actions_;
};

// Throws NotAFunctor when identities or composites are not respected.
FinitePresheaf make_presheaf(SitePtr site, std::vector<FinSet> values, std::vector<FinMap> actions);

// X(T) = decorations of T over P on a TEmb site; order-preserving decorations on a Planar site.
FinitePresheaf nerve_N0(const PolyEndo& p, const SitePtr& site);
// Hom(-, T) on any site; T must be an object of the site.
FinitePresheaf representable(const SitePtr& site, std::size_t object);
// Restriction along the free arrows of a Tree site into a TEmb site of the same bound.
FinitePresheaf restrict_to_embeddings(const FinitePresheaf& x, const SitePtr& temb);
// X(T) doubled at one object, labels "(x,0)" and "(x,1)". TEmb sites only.
FinitePresheaf double_at(const FinitePresheaf& x, std::size_t object);

// Members are subtrees of t.
bool is_cover(const Tree& t, const std::vector<Subtree>& family);
// The elementary cover first, then every reduced cover.
std::vector<std::vector<Subtree>> covering_families(const Tree& t);

struct SegalWitness {
    std::size_t object = 0;
    std::size_t value_size = 0;
    std::size_t families = 0;
    bool injective = false;
};

struct SegalReport {
    bool ok = true;
    std::size_t checked = 0;
    std::optional<SegalWitness> witness;
};

// Compares X(T) with families over one-node subtrees agreeing on shared edges.
SegalReport segal_check(const FinitePresheaf& x);

// Leaves of the canonical one-node trees in fibre order. TEmb sites only.
Collection restrict_to_elementary(const FinitePresheaf& x);
NonSymCollection restrict_to_planar_elementary(const FinitePresheaf& x);
// Families of operations over the nodes of each tree; one-node trees carry the operations themselves.
FinitePresheaf sheaf_extend(const Collection& c, const SitePtr& temb);
// Components X(T) -> sheaf_extend(restrict_to_elementary(X))(T), by restriction to nodes.
std::vector<FinMap> extension_unit(const FinitePresheaf& x, const FinitePresheaf& extension);
// Throws InvalidArgument when truncation bounds differ.
bool is_natural(const FinitePresheaf& x, const FinitePresheaf& y, const std::vector<FinMap>& components);
bool is_natural_iso(const FinitePresheaf& x, const FinitePresheaf& y, const std::vector<FinMap>& components);

enum class NerveVerdict { IsPolynomialMonadNerve, FailsSegal, NotFlat };

const char* to_string(NerveVerdict v);

struct NerveReport {
    NerveVerdict verdict = NerveVerdict::FailsSegal;
    SegalReport segal;
    std::optional<FlatWitness> flat_witness;
    std::optional<PolyEndo> reconstructed;
    // Cardinalities of the reconstructed nerve agree with X on every object.
    bool nerve_matches = false;
};

// Works on the restriction to embeddings. Every corolla with at most max_edges - 1 leaves must be in the site.
NerveReport nerve_theorem_check(const FinitePresheaf& x);
// Planar sites: the Segal condition alone decides, the polynomial is the planar endofunctor of the restriction.
NerveReport planar_nerve_theorem_check(const FinitePresheaf& x);

}  // namespace poly

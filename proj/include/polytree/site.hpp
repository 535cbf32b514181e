#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "polytree/omega.hpp"

namespace poly {

enum class SiteKind {
    // Canonical trees with tree embeddings.
    TEmb,
    // Canonical trees with all morphisms of the category of trees.
    Tree,
    // Planar trees (fibre order is the planar order) with order-preserving embeddings.
    Planar,
};

const char* to_string(SiteKind kind);

struct SiteArrow {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> edge_map;
    bool free = true;
};

// A finite category truncated at max_edges. Objects include stumps.
class Site {
public:
    SiteKind kind() const { return kind_; }
    std::size_t max_edges() const { return max_edges_; }

    const std::vector<Tree>& objects() const { return objects_; }
    const std::vector<std::string>& codes() const { return codes_; }
    const std::vector<SiteArrow>& arrows() const { return arrows_; }
    std::size_t object_count() const { return objects_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }

    // Object with the given code (canonical_form, or ptree code for Planar), npos if absent.
    std::size_t find_object(const std::string& code) const;
    // Object isomorphic to t; for Planar the fibre order counts. npos if absent.
    std::size_t object_of(const Tree& t) const;
    std::size_t find_arrow(std::size_t source, std::size_t target, const std::vector<std::size_t>& edge_map) const;
    std::size_t identity(std::size_t object) const { return identities_[object]; }
    // g after f, or npos when the composite leaves the site.
    std::size_t compose(std::size_t g, std::size_t f) const;
    const std::vector<std::size_t>& arrows_into(std::size_t object) const { return into_[object]; }
    const std::vector<std::size_t>& arrows_from(std::size_t object) const { return from_[object]; }

    // Trivial tree and one-node trees by arity (npos when outside the truncation).
    std::size_t trivial_object() const { return trivial_; }
    std::size_t corolla(std::size_t arity) const;
    // Arrow from the trivial object picking edge x of an object.
    std::size_t edge_arrow(std::size_t object, std::size_t x) const;

    OmegaMorphism morphism(std::size_t arrow) const;

    friend std::shared_ptr<const Site> make_site(SiteKind kind, std::size_t max_edges);

private:
    Site() = default;
    void add_arrow(SiteArrow a);

    SiteKind kind_ = SiteKind::TEmb;
    std::size_t max_edges_ = 0;
    std::vector<Tree> objects_;
    std::vector<std::string> codes_;
    std::map<std::string, std::size_t> object_index_;
    std::vector<SiteArrow> arrows_;
    std::map<std::pair<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>, std::size_t> arrow_index_;
    std::vector<std::size_t> identities_;
    std::vector<std::vector<std::size_t>> into_, from_;
    std::size_t trivial_ = npos;
    std::vector<std::size_t> corollas_;
};

using SitePtr = std::shared_ptr<const Site>;

SitePtr make_site(SiteKind kind, std::size_t max_edges);

}  // namespace poly

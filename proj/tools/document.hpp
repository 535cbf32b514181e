#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polytree/presheaf.hpp"

namespace poly::cli {

struct Location {
    std::size_t line = 0;
    std::size_t column = 0;
};

class ParseError : public Error {
public:
    ParseError(Location where, const std::string& message)
        : Error(ErrorKind::Parse, std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message),
          where_(where)
    {
    }
    Location where() const { return where_; }

private:
    Location where_;
};

struct NodeDef {
    std::string name;
    std::vector<std::string> inputs;
    std::string output;
    Location at;
};

// `poly` or `tree`. Marked inputs are named node.i by fibre position.
struct PolyDef {
    std::string name;
    bool is_tree = false;
    std::vector<std::string> edges;
    std::vector<NodeDef> nodes;
    Location at;
};

struct OpDef {
    std::string name;
    std::vector<std::string> inputs;
    std::string output;
    // Each permutation lists the images of 0..n-1.
    std::vector<Permutation> fixed_by;
    Location at;
};

struct CollDef {
    std::string name;
    std::vector<std::string> colours;
    std::vector<OpDef> ops;
    Location at;
};

// `{v1 v2}`, `|x` or a single node name.
struct SubtreeExpr {
    bool trivial = false;
    std::string edge;
    std::vector<std::string> nodes;
};

struct MapDef {
    std::string name;
    std::string source;
    std::string target;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::pair<std::string, SubtreeExpr>> nodes;
    Location at;
};

enum class PresheafSource { Nerve, Extend, Double };

struct PresheafDef {
    std::string name;
    PresheafSource source = PresheafSource::Nerve;
    std::string argument;
    // Tree naming the doubled object.
    std::string at_tree;
    Location at;
};

using Definition = std::variant<PolyDef, CollDef, MapDef, PresheafDef>;

struct Document {
    std::vector<Definition> definitions;

    const Definition* find(const std::string& name) const;
};

bool operator==(const NodeDef& a, const NodeDef& b);
bool operator==(const PolyDef& a, const PolyDef& b);
bool operator==(const OpDef& a, const OpDef& b);
bool operator==(const CollDef& a, const CollDef& b);
bool operator==(const SubtreeExpr& a, const SubtreeExpr& b);
bool operator==(const MapDef& a, const MapDef& b);
bool operator==(const PresheafDef& a, const PresheafDef& b);
bool operator==(const Document& a, const Document& b);

const std::string& name_of(const Definition& d);
Location location_of(const Definition& d);

// Syntax, duplicate names and unresolved references raise ParseError.
Document parse(std::string_view text);
std::string print(const Document& doc);
std::string print(const Definition& d);

// Definitions printed back from library objects.
PolyDef poly_to_def(const std::string& name, const PolyEndo& p, bool is_tree);

// Semantic resolution. Errors from the library are rethrown with the definition's location.
PolyEndo build_poly(const PolyDef& def);
Tree build_tree(const PolyDef& def);
Collection build_collection(const CollDef& def);
OmegaMorphism build_map(const Document& doc, const MapDef& def);
FinitePresheaf build_presheaf(const Document& doc, const PresheafDef& def, const SitePtr& site);

}  // namespace poly::cli

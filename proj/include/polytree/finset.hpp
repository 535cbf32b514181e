#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "polytree/error.hpp"

namespace poly {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Finite set of string labels with a fixed stored order. Copies share storage.
// Generated labels use the characters ( ) , . = | / : [ ] < > ; and user
// labels should avoid them to keep generated labels unambiguous.
class FinSet {
public:
    FinSet();
    explicit FinSet(std::vector<std::string> labels);
    FinSet(std::initializer_list<std::string> labels);

    // {prefix0, prefix1, ...}
    static FinSet range(std::string_view prefix, std::size_t n);

    std::size_t size() const { return rep_->labels.size(); }
    bool empty() const { return size() == 0; }
    const std::string& operator[](std::size_t i) const { return rep_->labels[i]; }
    const std::vector<std::string>& labels() const { return rep_->labels; }

    std::optional<std::size_t> find(std::string_view label) const;
    std::size_t index_of(std::string_view label) const;
    bool contains(std::string_view label) const { return find(label).has_value(); }

    // Same labels in the same stored order.
    bool identical(const FinSet& other) const;

    // Label-set equality; order is ignored.
    friend bool operator==(const FinSet& a, const FinSet& b);

    struct Rep {
        std::vector<std::string> labels;
        std::unordered_map<std::string, std::size_t> index;
    };

private:
    std::shared_ptr<const Rep> rep_;
};

class FinMap {
public:
    FinMap() = default;
    FinMap(FinSet source, FinSet target, std::vector<std::size_t> image);

    static FinMap identity(const FinSet& set);
    static FinMap from_labels(const FinSet& source, const FinSet& target,
                              const std::vector<std::string>& image_labels);
    // Unique map into a singleton.
    static FinMap to_point(const FinSet& source, const FinSet& point);

    const FinSet& source() const { return source_; }
    const FinSet& target() const { return target_; }
    const std::vector<std::size_t>& images() const { return image_; }

    std::size_t operator()(std::size_t i) const { return image_[i]; }
    const std::string& apply(std::string_view label) const;

    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const { return is_injective() && is_surjective(); }
    std::vector<std::size_t> preimage(std::size_t target_index) const;

    // Requires a bijection.
    FinMap inverse() const;

    // Compares label graphs, so reordered but equal sets compare equal.
    friend bool operator==(const FinMap& a, const FinMap& b);

private:
    FinSet source_;
    FinSet target_;
    std::vector<std::size_t> image_;
};

// g after f.
FinMap compose(const FinMap& g, const FinMap& f);

struct Sum {
    FinSet set;
    FinMap left;
    FinMap right;
};

// Labels L.x and R.y.
Sum sum(const FinSet& a, const FinSet& b);

struct Pullback {
    FinSet set;
    FinMap first;
    FinMap second;
};

// Pairs (x,y) with f(x) = g(y), labelled "(x,y)", in lexicographic stored order.
Pullback pullback(const FinMap& f, const FinMap& g);

struct Pushout {
    FinSet set;
    FinMap left;
    FinMap right;
};

// f : 1 -> A, g : 1 -> B. The glued element is labelled "(a=b)", the rest L.x and R.y.
Pushout pushout_over_singleton(const FinMap& f, const FinMap& g);

//   A --top--> B
//   |          |
//  left      right
//   v          v
//   C --bottom-> D
struct Square {
    FinMap top;
    FinMap left;
    FinMap right;
    FinMap bottom;
};

bool commutes(const Square& sq);

// Throws SquareNotCommuting when the square does not commute.
bool is_cartesian(const Square& sq);

// Restriction of a map to the subset of source indices, relabelled on the subset.
FinSet subset(const FinSet& set, const std::vector<std::size_t>& indices);

}  // namespace poly

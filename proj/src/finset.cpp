#include "polytree/finset.hpp"

#include <algorithm>
#include <unordered_map>

namespace poly {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotSingleton: return "NotSingleton";
    case ErrorKind::SquareNotCommuting: return "SquareNotCommuting";
    case ErrorKind::MiddleNotCartesian: return "MiddleNotCartesian";
    case ErrorKind::ColourMismatch: return "ColourMismatch";
    case ErrorKind::TNotInjective: return "TNotInjective";
    case ErrorKind::SNotInjective: return "SNotInjective";
    case ErrorKind::SBadComplement: return "SBadComplement";
    case ErrorKind::SigmaDiverges: return "SigmaDiverges";
    case ErrorKind::DistanceUndefined: return "DistanceUndefined";
    case ErrorKind::NotALeaf: return "NotALeaf";
    case ErrorKind::NotInnerEdge: return "NotInnerEdge";
    case ErrorKind::NotASubtree: return "NotASubtree";
    case ErrorKind::TrivialTree: return "TrivialTree";
    case ErrorKind::NotATreeMorphism: return "NotATreeMorphism";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::ArityUnsupported: return "ArityUnsupported";
    case ErrorKind::NotFlat: return "NotFlat";
    case ErrorKind::NotAFunctor: return "NotAFunctor";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
    }
    return "Error";
}

namespace {

std::shared_ptr<const FinSet::Rep> empty_rep()
{
    static const auto rep = std::make_shared<const FinSet::Rep>();
    return rep;
}

}  // namespace

FinSet::FinSet() : rep_(empty_rep()) {}

FinSet::FinSet(std::vector<std::string> labels)
{
    auto rep = std::make_shared<Rep>();
    rep->index.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!rep->index.emplace(labels[i], i).second)
            throw Error(ErrorKind::DuplicateLabel, labels[i]);
    }
    rep->labels = std::move(labels);
    rep_ = std::move(rep);
}

FinSet::FinSet(std::initializer_list<std::string> labels) : FinSet(std::vector<std::string>(labels)) {}

FinSet FinSet::range(std::string_view prefix, std::size_t n)
{
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(std::string(prefix) + std::to_string(i));
    return FinSet(std::move(labels));
}

std::optional<std::size_t> FinSet::find(std::string_view label) const
{
    auto it = rep_->index.find(std::string(label));
    if (it == rep_->index.end())
        return std::nullopt;
    return it->second;
}

std::size_t FinSet::index_of(std::string_view label) const
{
    auto i = find(label);
    if (!i)
        throw Error(ErrorKind::UnknownLabel, std::string(label));
    return *i;
}

bool FinSet::identical(const FinSet& other) const
{
    return rep_ == other.rep_ || rep_->labels == other.rep_->labels;
}

bool operator==(const FinSet& a, const FinSet& b)
{
    if (a.rep_ == b.rep_)
        return true;
    if (a.size() != b.size())
        return false;
    for (const auto& l : a.labels())
        if (!b.contains(l))
            return false;
    return true;
}

FinMap::FinMap(FinSet source, FinSet target, std::vector<std::size_t> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image))
{
    if (image_.size() != source_.size())
        throw Error(ErrorKind::ShapeMismatch, "map assigns " + std::to_string(image_.size()) +
                                                  " images to a source of size " + std::to_string(source_.size()));
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] >= target_.size())
            throw Error(ErrorKind::ShapeMismatch, "image of " + source_[i] + " outside target");
}

FinMap FinMap::identity(const FinSet& set)
{
    std::vector<std::size_t> image(set.size());
    for (std::size_t i = 0; i < image.size(); ++i)
        image[i] = i;
    return FinMap(set, set, std::move(image));
}

FinMap FinMap::from_labels(const FinSet& source, const FinSet& target, const std::vector<std::string>& image_labels)
{
    if (image_labels.size() != source.size())
        throw Error(ErrorKind::ShapeMismatch, "label list length differs from source size");
    std::vector<std::size_t> image;
    image.reserve(image_labels.size());
    for (const auto& l : image_labels)
        image.push_back(target.index_of(l));
    return FinMap(source, target, std::move(image));
}

FinMap FinMap::to_point(const FinSet& source, const FinSet& point)
{
    if (point.size() != 1)
        throw Error(ErrorKind::NotSingleton, "target has " + std::to_string(point.size()) + " elements");
    return FinMap(source, point, std::vector<std::size_t>(source.size(), 0));
}

const std::string& FinMap::apply(std::string_view label) const
{
    return target_[image_[source_.index_of(label)]];
}

bool FinMap::is_injective() const
{
    std::vector<bool> hit(target_.size(), false);
    for (auto j : image_) {
        if (hit[j])
            return false;
        hit[j] = true;
    }
    return true;
}

bool FinMap::is_surjective() const
{
    std::vector<bool> hit(target_.size(), false);
    for (auto j : image_)
        hit[j] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<std::size_t> FinMap::preimage(std::size_t target_index) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] == target_index)
            out.push_back(i);
    return out;
}

FinMap FinMap::inverse() const
{
    if (!is_bijective())
        throw Error(ErrorKind::InvalidArgument, "inverse of a non-bijective map");
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
        inv[image_[i]] = i;
    return FinMap(target_, source_, std::move(inv));
}

bool operator==(const FinMap& a, const FinMap& b)
{
    if (!(a.source_ == b.source_) || !(a.target_ == b.target_))
        return false;
    if (a.source_.identical(b.source_) && a.target_.identical(b.target_))
        return a.image_ == b.image_;
    for (std::size_t i = 0; i < a.source_.size(); ++i)
        if (a.target_[a.image_[i]] != b.apply(a.source_[i]))
            return false;
    return true;
}

FinMap compose(const FinMap& g, const FinMap& f)
{
    if (!(f.target() == g.source()))
        throw Error(ErrorKind::ShapeMismatch, "composite of non-composable maps");
    std::vector<std::size_t> image(f.source().size());
    if (f.target().identical(g.source())) {
        for (std::size_t i = 0; i < image.size(); ++i)
            image[i] = g(f(i));
    } else {
        for (std::size_t i = 0; i < image.size(); ++i)
            image[i] = g(g.source().index_of(f.target()[f(i)]));
    }
    return FinMap(f.source(), g.target(), std::move(image));
}

Sum sum(const FinSet& a, const FinSet& b)
{
    std::vector<std::string> labels;
    labels.reserve(a.size() + b.size());
    for (const auto& x : a.labels())
        labels.push_back("L." + x);
    for (const auto& y : b.labels())
        labels.push_back("R." + y);
    FinSet s(std::move(labels));
    std::vector<std::size_t> li(a.size()), ri(b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        li[i] = i;
    for (std::size_t i = 0; i < b.size(); ++i)
        ri[i] = a.size() + i;
    return {s, FinMap(a, s, std::move(li)), FinMap(b, s, std::move(ri))};
}

Pullback pullback(const FinMap& f, const FinMap& g)
{
    if (!(f.target() == g.target()))
        throw Error(ErrorKind::ShapeMismatch, "pullback of maps with different codomains");
    std::vector<std::string> labels;
    std::vector<std::size_t> first, second;
    for (std::size_t x = 0; x < f.source().size(); ++x) {
        const auto& fx = f.target()[f(x)];
        for (std::size_t y = 0; y < g.source().size(); ++y) {
            if (g.target()[g(y)] != fx)
                continue;
            labels.push_back("(" + f.source()[x] + "," + g.source()[y] + ")");
            first.push_back(x);
            second.push_back(y);
        }
    }
    FinSet s(std::move(labels));
    return {s, FinMap(s, f.source(), std::move(first)), FinMap(s, g.source(), std::move(second))};
}

Pushout pushout_over_singleton(const FinMap& f, const FinMap& g)
{
    if (f.source().size() != 1 || g.source().size() != 1)
        throw Error(ErrorKind::NotSingleton, "pushout is taken over a one-element set");
    const auto& a = f.target();
    const auto& b = g.target();
    std::size_t ma = f(0), mb = g(0);
    std::vector<std::string> labels;
    std::vector<std::size_t> li(a.size()), ri(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        li[i] = labels.size();
        labels.push_back(i == ma ? "(" + a[i] + "=" + b[mb] + ")" : "L." + a[i]);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (j == mb) {
            ri[j] = li[ma];
            continue;
        }
        ri[j] = labels.size();
        labels.push_back("R." + b[j]);
    }
    FinSet s(std::move(labels));
    return {s, FinMap(a, s, std::move(li)), FinMap(b, s, std::move(ri))};
}

bool commutes(const Square& sq)
{
    return compose(sq.right, sq.top) == compose(sq.bottom, sq.left);
}

bool is_cartesian(const Square& sq)
{
    if (!commutes(sq))
        throw Error(ErrorKind::SquareNotCommuting, "square does not commute");
    // Comparison map A -> C x_D B must be bijective.
    const auto& a = sq.top.source();
    const auto& c = sq.left.target();
    const auto& b = sq.top.target();
    std::vector<std::size_t> count(c.size() * b.size(), 0);
    for (std::size_t x = 0; x < a.size(); ++x) {
        std::size_t cx = sq.left(x);
        std::size_t bx = sq.top(x);
        if (++count[cx * b.size() + bx] > 1)
            return false;
    }
    for (std::size_t cx = 0; cx < c.size(); ++cx) {
        const auto& dc = sq.bottom.target()[sq.bottom(cx)];
        for (std::size_t bx = 0; bx < b.size(); ++bx)
            if (sq.right.target()[sq.right(bx)] == dc && count[cx * b.size() + bx] == 0)
                return false;
    }
    return true;
}

FinSet subset(const FinSet& set, const std::vector<std::size_t>& indices)
{
    std::vector<std::string> labels;
    labels.reserve(indices.size());
    for (auto i : indices)
        labels.push_back(set[i]);
    return FinSet(std::move(labels));
}

}  // namespace poly

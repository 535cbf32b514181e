#pragma once

#include <stdexcept>
#include <string>

namespace poly {

enum class ErrorKind {
    DuplicateLabel,
    UnknownLabel,
    ShapeMismatch,
    NotSingleton,
    SquareNotCommuting,
    MiddleNotCartesian,
    ColourMismatch,
    TNotInjective,
    SNotInjective,
    SBadComplement,
    SigmaDiverges,
    DistanceUndefined,
    NotALeaf,
    NotInnerEdge,
    NotASubtree,
    TrivialTree,
    NotATreeMorphism,
    BoundExceeded,
    ArityUnsupported,
    NotFlat,
    NotAFunctor,
    InvalidArgument,
    Parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Raised by certify_tree; axiom is 1..4.
class TreeAxiomError : public Error {
public:
    TreeAxiomError(int axiom, ErrorKind kind, const std::string& what)
        : Error(kind, "axiom " + std::to_string(axiom) + ": " + what), axiom_(axiom)
    {
    }

    int axiom() const { return axiom_; }

private:
    int axiom_;
};

}  // namespace poly

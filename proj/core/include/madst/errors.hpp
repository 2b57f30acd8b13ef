#ifndef MADST_ERRORS_HPP
#define MADST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace madst {

/// Base class for all madst errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DisconnectedGraph : Error {
    DisconnectedGraph() : Error("graph is not connected") {}
    explicit DisconnectedGraph(const std::string& what) : Error(what) {}
};

struct TooLarge : Error {
    using Error::Error;
};

struct TooSmall : Error {
    using Error::Error;
};

struct InvalidTree : Error {
    using Error::Error;
};

struct EdgeNotInTree : Error {
    using Error::Error;
};

struct NotAPath : Error {
    using Error::Error;
};

struct InvalidPartition : Error {
    using Error::Error;
};

struct InvalidPlan : Error {
    using Error::Error;
};

struct HypothesisViolated : Error {
    using Error::Error;
};

struct InvalidDecomposition : Error {
    using Error::Error;
};

struct InvalidX3C : Error {
    using Error::Error;
};

struct InfeasibleParameters : Error {
    using Error::Error;
};

struct InfeasibleCounts : Error {
    using Error::Error;
};

struct AlgorithmUnavailable : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct Overflow : Error {
    Overflow() : Error("64-bit overflow in Wiener arithmetic") {}
};

} // namespace madst

#endif

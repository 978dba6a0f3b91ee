#pragma once

#include <stdexcept>
#include <string>

namespace ars3d {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A structure or map fails one of its defining conditions.
struct ValidationError : Error {
    using Error::Error;
};

/// The linear field of a structure is not rank two.
struct RankError : Error {
    using Error::Error;
};

/// Neither s nor -s conjugates the two flows.
struct NotConjugatingError : Error {
    NotConjugatingError(const std::string& what, double plus, double minus)
        : Error(what), residual_plus(plus), residual_minus(minus) {}
    double residual_plus;
    double residual_minus;
};

/// A curve met the singular locus more often than allowed on a bounded interval.
struct TooManyCrossingsError : Error {
    using Error::Error;
};

}  // namespace ars3d

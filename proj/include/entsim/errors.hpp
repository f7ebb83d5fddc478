#pragma once

#include <stdexcept>
#include <string>

namespace entsim {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Composing states or routing modes in a way that is not well defined
// (overlapping mode sets, occupied destination modes, bad occupancy).
struct InvalidCompositionError : Error {
    using Error::Error;
};

// A matrix that was required to be unitary (or otherwise structured) is not.
struct InvalidElementError : Error {
    using Error::Error;
};

// Mode-overlap magnitude outside [0, 1].
struct InvalidOverlapError : Error {
    using Error::Error;
};

// Scalar parameter outside its physical range.
struct InvalidParameterError : Error {
    using Error::Error;
};

// Normalizing or reducing a state with zero norm.
struct DegenerateStateError : Error {
    using Error::Error;
};

// Correlation from an all-zero count quadruple.
struct UndefinedCorrelationError : Error {
    using Error::Error;
};

// A count record is missing settings required by the requested analysis.
struct IncompleteRecordError : Error {
    using Error::Error;
};

// Fringe fit found no modulation (B <= 0).
struct NoFringeError : Error {
    using Error::Error;
};

// Dip fit found a peak instead of a dip.
struct InvertedDipError : Error {
    using Error::Error;
};

// Tomographic projector set is not informationally complete.
struct IncompleteTomographyError : Error {
    using Error::Error;
};

// Fidelity estimate requested with a vanishing leading-order probability.
struct UndefinedEstimateError : Error {
    using Error::Error;
};

// Config file / flag parsing problems.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace entsim

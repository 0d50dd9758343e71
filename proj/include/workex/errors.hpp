#pragma once

#include <stdexcept>
#include <string>

namespace workex {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
class RangeError : public Error {
public:
    using Error::Error;
};

// Scalar input outside the mathematical domain (e.g. D(x||y) with y in {0,1}).
class DomainError : public Error {
public:
    using Error::Error;
};

// Probability vector whose sum deviates from 1 beyond tolerance.
class NotNormalized : public Error {
public:
    using Error::Error;
};

// p places mass where q has none; relative entropy diverges.
class SupportMismatch : public Error {
public:
    using Error::Error;
};

// Zero population where a strictly positive one is required.
class SupportError : public Error {
public:
    using Error::Error;
};

// Nonnegative multinomial counts that do not sum to the copy count.
class CompositionSumMismatch : public Error {
public:
    using Error::Error;
};

// Composition enumeration would exceed the configured guard.
class TooManyCompositions : public Error {
public:
    using Error::Error;
};

// Requested work value is not an achievable point of the energy lattice.
class OffLattice : public Error {
public:
    using Error::Error;
};

// Level spacings admit no common base quantum at the required precision.
class IncommensurateSpectrum : public Error {
public:
    using Error::Error;
};

// No inverse temperature on the searched branch matches the target entropy.
class BracketFailure : public Error {
public:
    using Error::Error;
};

// Scan exhausted its configured upper limit without a solution.
class NoSolution : public Error {
public:
    using Error::Error;
};

// Malformed input file or option value.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace workex

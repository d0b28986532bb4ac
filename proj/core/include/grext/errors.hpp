#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grext {

/// Base of every error raised by the engine. Hypothesis failures are not
/// errors; they are reported as verdicts.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

enum class Axiom { Associativity, Unit, FiltrationMultiplicativity, Augmentation, ModuleAction, Grading };

const char* axiom_name(Axiom a);

class AxiomViolation : public Error {
public:
    AxiomViolation(Axiom which, const std::string& detail)
        : Error(std::string(axiom_name(which)) + " axiom violated: " + detail), which_(which) {}
    Axiom which() const { return which_; }

private:
    Axiom which_;
};

class ResourceCapExceeded : public Error {
public:
    using Error::Error;
};

class TruncationExceeded : public Error {
public:
    using Error::Error;
};

class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

class NotInSubgroup : public Error {
public:
    using Error::Error;
};

class NotAPGroup : public Error {
public:
    using Error::Error;
};

class MorphismInvalid : public Error {
public:
    using Error::Error;
};

}  // namespace grext

#pragma once

#include <stdexcept>
#include <string>

namespace ietlab {

// All library errors derive from Error and carry a stable machine-readable
// code alongside the human message.  The command line tool maps codes to
// structured error reports; tests match on codes rather than message text.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Two quadratic values with different radicands were combined.
struct FieldMismatchError : Error {
    explicit FieldMismatchError(const std::string& m) : Error("field-mismatch", m) {}
};

// Malformed scalar text, zero denominator, or a radicand that is not a
// positive square-free integer.
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("parse-error", m) {}
};

// Division by zero or a floor_div with nonpositive divisor.
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error("domain-error", m) {}
};

// Lengths not strictly positive, or total inconsistent.
struct InvalidLengthsError : Error {
    explicit InvalidLengthsError(const std::string& m) : Error("invalid-lengths", m) {}
};

// Images not a bijection of 1..n, or an operation that needs irreducibility
// was handed a reducible permutation.
struct InvalidPermutationError : Error {
    explicit InvalidPermutationError(const std::string& m) : Error("invalid-permutation", m) {}
};

// Point outside the map's domain interval.
struct OutOfDomainError : Error {
    explicit OutOfDomainError(const std::string& m) : Error("out-of-domain", m) {}
};

// A piece of the inducing interval failed to come back within the step cap.
struct NonReturnError : Error {
    explicit NonReturnError(const std::string& m) : Error("non-return", m) {}
};

// The two candidate lengths at the right end are equal, so the
// renormalization step is not defined.
struct UndefinedStepError : Error {
    explicit UndefinedStepError(const std::string& m) : Error("undefined-step", m) {}
};

// A search (tower level, scan) exhausted its iterate budget.
struct NotFoundError : Error {
    explicit NotFoundError(const std::string& m) : Error("not-found", m) {}
};

// An itinerary window too small for the requested scan.
struct InsufficientWindowError : Error {
    explicit InsufficientWindowError(const std::string& m) : Error("insufficient-window", m) {}
};

// The candidate construction found no usable interval L at some continuity
// interval (the induced return map is too far from the identity).
struct NoCandidateError : Error {
    explicit NoCandidateError(const std::string& m) : Error("no-candidate", m) {}
};

// Bad task parameters (nonpositive depth, empty word, ...).
struct ParameterError : Error {
    explicit ParameterError(const std::string& m) : Error("parameter-error", m) {}
};

// Certified real-root isolation could not finish (degeneracy or depth cap).
struct IsolationError : Error {
    explicit IsolationError(const std::string& m) : Error("isolation-error", m) {}
};

}  // namespace ietlab

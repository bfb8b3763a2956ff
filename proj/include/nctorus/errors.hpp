#pragma once

#include <stdexcept>
#include <string>

namespace nctorus {

// Bad arguments or violated preconditions (maps to CLI exit code 2).
struct InvalidInputError : std::invalid_argument {
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// A convergence/invertibility hypothesis could not be certified. This is
// never a claim of divergence, only that no certificate is available
// (maps to CLI exit code 3).
struct CertificateError : std::runtime_error {
    explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

// Exact pole hit while evaluating a rational function outside the
// regularized path.
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// A fiber sum still vanishes in the denominator at epsilon = 0 after
// cancelling the common power. Analytically impossible, so this reports a
// bug or hopeless ill-conditioning rather than producing silent output.
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// An identity the theory guarantees failed beyond tolerance (e.g. a
// product of exponentials that must be scalar picked up non-scalar mass).
struct IdentityViolationError : std::runtime_error {
    explicit IdentityViolationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nctorus

#pragma once

#include <stdexcept>
#include <string>

namespace nth {

// Rejected user-facing input (bad prime, malformed polynomial, unusable instance).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : InvalidInput {
    std::size_t pos;
    ParseError(const std::string& what, std::size_t at)
        : InvalidInput(what + " (at position " + std::to_string(at) + ")"), pos(at) {}
};

struct NonconformingExponent : ParseError {
    using ParseError::ParseError;
};

struct ZeroInverse : std::domain_error {
    ZeroInverse() : std::domain_error("inverse of zero residue") {}
};

struct NotAUnit : std::domain_error {
    NotAUnit() : std::domain_error("series has no inverse: constant term is zero") {}
};

struct BadDigit : std::domain_error {
    BadDigit() : std::domain_error("digit out of range for radix") {}
};

struct IndexTooLow : std::domain_error {
    IndexTooLow() : std::domain_error("coefficient index below series valuation") {}
};

// An internal exactness check failed; results cannot be trusted.  CLI exit code 3.
struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPolynomialResult : CertificateError {
    NonPolynomialResult() : CertificateError("partial power is not a polynomial: exact division failed") {}
};

}  // namespace nth

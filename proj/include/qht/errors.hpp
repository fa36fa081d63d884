#pragma once

#include <stdexcept>
#include <string>

namespace qht {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Spectrum of the real representation cannot be partitioned into quadruples.
struct GroupingError : Error { using Error::Error; };

// Matrix fails the hyperhermitian check (never silently symmetrized).
struct SymmetryError : Error { using Error::Error; };

struct SingularError : Error { using Error::Error; };

// Point left the admissibility cone, or input outside an operator's domain.
struct DomainError : Error { using Error::Error; };
struct AdmissibilityError : Error { using Error::Error; };

struct ConvergenceError : Error { using Error::Error; };
struct LineSearchError : Error { using Error::Error; };
struct MaxIterError : Error { using Error::Error; };
struct KrylovError : Error { using Error::Error; };

struct IoError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace qht

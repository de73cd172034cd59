#pragma once

#include <stdexcept>
#include <string>

namespace cjvol {

// Errors fall in two families so the CLI can map them to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainFamily : public Error {
public:
    using Error::Error;
};

class NumericalFamily : public Error {
public:
    using Error::Error;
};

struct DomainError : DomainFamily { using DomainFamily::DomainFamily; };
struct RangeError : DomainFamily { using DomainFamily::DomainFamily; };
struct CutPointError : DomainFamily { using DomainFamily::DomainFamily; };
struct BranchCutError : DomainFamily { using DomainFamily::DomainFamily; };

struct QuadratureError : NumericalFamily { using NumericalFamily::NumericalFamily; };
struct RealnessError : NumericalFamily { using NumericalFamily::NumericalFamily; };
struct RootNotFoundError : NumericalFamily { using NumericalFamily::NumericalFamily; };
struct FitError : NumericalFamily { using NumericalFamily::NumericalFamily; };
struct BracketError : NumericalFamily { using NumericalFamily::NumericalFamily; };
struct SingularityError : NumericalFamily { using NumericalFamily::NumericalFamily; };
struct ResolutionError : NumericalFamily { using NumericalFamily::NumericalFamily; };

} // namespace cjvol

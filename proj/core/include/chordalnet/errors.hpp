#ifndef CHORDALNET_ERRORS_HPP
#define CHORDALNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chordalnet {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: files, tables, graphs, arguments.
struct InputError : Error {
    using Error::Error;
};

// External solver process failed or produced unusable output.
struct SolverError : Error {
    using Error::Error;
};

// A decoded or supplied network failed independent verification.
struct VerifyError : Error {
    using Error::Error;
};

} // namespace chordalnet

#endif

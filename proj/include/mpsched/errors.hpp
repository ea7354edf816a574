#pragma once

#include <stdexcept>
#include <string>

namespace mpsched {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed instance/schedule text. `line` is 1-based.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct InvalidSchedule : Error {
    using Error::Error;
};

struct Infeasible : Error {
    using Error::Error;
};

struct NotIdentical : Error {
    using Error::Error;
};

struct BadReductionInput : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct BadChain : Error {
    using Error::Error;
};

struct NoFeasibleFlow : Error {
    using Error::Error;
};

struct LpInfeasible : Error {
    using Error::Error;
};

struct LpUnbounded : Error {
    using Error::Error;
};

struct BadArgument : Error {
    using Error::Error;
};

// Instance outside an algorithm's domain (e.g. non-unit jobs for a unit-job
// solver); the CLI maps this to exit code 2, like Infeasible.
struct DomainMismatch : Error {
    using Error::Error;
};

// A broken internal invariant; indicates a bug, maps to exit code 3 in the CLI.
struct InternalError : Error {
    using Error::Error;
};

#define MPSCHED_ASSERT(cond, msg)                                         \
    do {                                                                  \
        if (!(cond)) throw ::mpsched::InternalError(std::string("assertion failed: ") + (msg)); \
    } while (0)

}  // namespace mpsched

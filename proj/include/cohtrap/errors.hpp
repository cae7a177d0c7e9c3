// errors.hpp: exception types shared by every cohtrap module

#pragma once

#include <stdexcept>
#include <string>

namespace cohtrap {

// Argument outside the mathematical or physical domain of an operation.
// The CLI maps this (and std::invalid_argument) to exit code 2.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Trapping requires a super-Ohmic bath (mu > 0).
class no_trapping_error : public domain_error {
public:
    using domain_error::domain_error;
};

// An iterative numerical method ran out of budget. CLI exit code 3.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The QSL path length vanished, so the ratio is undefined.
class degenerate_error : public convergence_error {
public:
    using convergence_error::convergence_error;
};

} // namespace cohtrap

#pragma once

#include <stdexcept>
#include <string>

namespace tsbreak {

// Not enough samples for the requested fit (short segment, empty window,
// empty seasonal residue class, underdetermined polynomial).
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested combinatorial configuration cannot be formed (e.g. more
// segments than T/h_min allows) or an enumeration guard was exceeded.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file (bad cell, ragged row, missing column).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tsbreak

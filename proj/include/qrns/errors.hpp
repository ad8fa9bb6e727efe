#pragma once

#include <stdexcept>

namespace qrns {

class InvalidGate : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Register width outside what a builder or formula supports.
class WidthError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Qubit roles that overlap where a block needs them distinct.
class LayoutError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Value outside the domain of an encoding or conversion.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Encoded value that breaks its representation invariant.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace qrns

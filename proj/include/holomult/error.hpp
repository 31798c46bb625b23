// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace holomult {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A multi-index fell outside the truncation box it was used with.
class OutOfBox : public Error {
public:
    using Error::Error;
};

/// A point has a zero coordinate where coordinatewise inversion is needed.
class HyperplaneError : public Error {
public:
    using Error::Error;
};

class UnsupportedGeometry : public Error {
public:
    using Error::Error;
};

/// No admissible contour exists, or an integrand is singular on the chosen one.
class ContourPlacementError : public Error {
public:
    using Error::Error;
};

class NodeCountError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// A functional failed the sampled carrier test on z^{-1}Omega.
class MembershipError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace holomult

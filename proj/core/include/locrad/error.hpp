#pragma once

#include <stdexcept>
#include <string>

namespace locrad {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Labels are not realizable by any member of the class.
class InconsistentLabels : public Error {
public:
    using Error::Error;
};

class NotConverged : public Error {
public:
    using Error::Error;
};

class DivergentIntegral : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace locrad

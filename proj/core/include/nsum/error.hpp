#pragma once

#include <stdexcept>

namespace nsum {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed external data: lexicon files, encoded blobs, state files.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Operation invoked outside its domain: bad arity, empty input, parameter out of range.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace nsum

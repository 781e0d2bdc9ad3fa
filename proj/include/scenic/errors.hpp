#pragma once

#include <stdexcept>
#include <string>

namespace scenic {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input data: bad weights, coincident sites, malformed documents.
class DataError : public Error {
public:
    using Error::Error;
};

// A configured size cap (curves, APSP nodes, flats) was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace scenic

#pragma once

#include <stdexcept>
#include <string>

namespace xisis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: length mismatch, out-of-range parameters, bad labels.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The response carries no information (constant y).
class DegenerateResponse : public Error {
public:
    using Error::Error;
};

/// A predictor or response is constant where a baseline score needs spread.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// A ratio metric has a zero denominator. `which` names the ratio.
class UndefinedMetric : public Error {
public:
    UndefinedMetric(std::string which, const std::string& what)
        : Error(what), which_(std::move(which)) {}

    const std::string& which() const noexcept { return which_; }

private:
    std::string which_;
};

}  // namespace xisis

#pragma once

#include <stdexcept>
#include <string>

namespace refnet {

/// Base for every error raised by the library. The CLI maps each subclass to
/// a distinct exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration value or flag.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input data violates a type invariant or an operation precondition.
class DataError : public Error {
public:
    using Error::Error;
};

/// The chosen reference model cannot be applied to the data or statistic.
class ModelIncompatible : public Error {
public:
    using Error::Error;
};

/// A degree sequence has no simple-graph realization (odd sum or fails
/// Erdos-Gallai).
class NotRealizable : public DataError {
public:
    using DataError::DataError;
};

/// A graphical sequence could not be realized within the attempt budget.
class ConstructionFailed : public Error {
public:
    using Error::Error;
};

}  // namespace refnet

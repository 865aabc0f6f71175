#pragma once

#include <stdexcept>
#include <string>

namespace polsar {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, inconsistent dimensions, malformed scene specs.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or matrices that violate the PSD contract.
class DataError : public Error {
public:
    using Error::Error;
};

class EmptyWindowError : public Error {
public:
    using Error::Error;
};

/// Jacobi sweeps exhausted. Never expected for valid input.
class EigFailure : public Error {
public:
    using Error::Error;
};

class CholeskyError : public Error {
public:
    using Error::Error;
};

class ZeroPowerPixelError : public Error {
public:
    using Error::Error;
};

/// A declared class has no training samples (or a classifier needs more classes).
class MissingClassError : public Error {
public:
    using Error::Error;
};

class InsufficientSamplesError : public Error {
public:
    using Error::Error;
};

class DegenerateClassError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class EmptyEvaluationError : public Error {
public:
    using Error::Error;
};

/// Malformed file. The message names the file and the byte offset.
class FormatError : public Error {
public:
    FormatError(const std::string& file, std::size_t offset, const std::string& what)
        : Error(file + ": offset " + std::to_string(offset) + ": " + what), file_(file), offset_(offset) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::string file_;
    std::size_t offset_;
};

} // namespace polsar

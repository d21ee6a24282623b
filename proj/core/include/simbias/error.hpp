#pragma once

#include <stdexcept>
#include <string>

namespace simbias {

// Base for every error raised by the library. `module()` names the
// component that raised it so the CLI can print module-qualified messages.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error(what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Raised when an operation is not defined for the given map, e.g. exhaustive
// enumeration of a real-valued input space or one above the budget.
class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class IngestionError : public Error {
public:
    IngestionError(const std::string& what, long row)
        : Error("maps", what), row_(row) {}

    // Zero-based data row index, or -1 when the file itself is unreadable.
    long row() const noexcept { return row_; }

private:
    long row_;
};

}  // namespace simbias

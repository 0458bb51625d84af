#pragma once

#include <stdexcept>
#include <string>

namespace ledgertopo {

/// Bad configuration: unknown column, malformed option, missing file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input data. Carries the 1-based data row number when known (0 otherwise).
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t row = 0)
        : std::runtime_error(row ? "row " + std::to_string(row) + ": " + what : what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// An analysis could not complete (e.g. randomization repair budget exhausted).
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ledgertopo

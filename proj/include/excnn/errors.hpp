#pragma once

#include <stdexcept>
#include <string>

namespace excnn {

/// Malformed input file (PGM, curve file, config).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
          offset(byte_offset) {}
    std::size_t offset;
};

/// Mismatched grid/coupling/image dimensions or out-of-range cell.
class StructuralError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite state produced by the integrator.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(int row, int col, double t_ns)
        : std::runtime_error("non-finite state at cell (" + std::to_string(row) + "," +
                             std::to_string(col) + ") at t=" + std::to_string(t_ns) + " ns"),
          row(row), col(col), t_ns(t_ns) {}
    int row;
    int col;
    double t_ns;
};

/// Invalid configuration value.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A corridor measurement that never produced a traveling front.
class MeasurementError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace excnn

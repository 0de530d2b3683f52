#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace romkit {

// Exit-code contract of the command line tool. Every error class carries
// exactly one code so callers can map failures mechanically.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitParse = 3,
    kExitValidation = 4,
    kExitGeometry = 5,
};

class Error : public std::runtime_error {
public:
    Error(std::string msg, int code) : std::runtime_error(std::move(msg)), code_(code) {}
    int exit_code() const { return code_; }

private:
    int code_;
};

// Bad parameters or flags (window even, n_samples < 2, unknown channel, ...).
class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(std::string msg) : Error(std::move(msg), kExitUsage) {}
};

enum class ParseErrorKind {
    empty_file,
    malformed_header,
    wrong_column_count,
    non_numeric_cell,
    bad_frame_index,
    malformed_json,
};

// Malformed input file. `line` is 1-based within the offending file.
class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg, kExitParse),
          kind_(kind),
          line_(line) {}
    ParseErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

// Unreadable or unwritable file. Shares the parse exit code: both mean the
// input data could not be consumed.
class IoError : public Error {
public:
    explicit IoError(std::string msg) : Error(std::move(msg), kExitParse) {}
};

// Semantically invalid data: failed sequence validation, manifest integrity,
// bad landmarks.
class ValidationError : public Error {
public:
    explicit ValidationError(std::string msg) : Error(std::move(msg), kExitValidation) {}
};

enum class GeometryErrorKind {
    degenerate_vector,
    degenerate_bone,
    degenerate_plane,
    degenerate_projection,
};

class GeometryError : public Error {
public:
    GeometryError(GeometryErrorKind kind, std::string msg)
        : Error(std::move(msg), kExitGeometry), kind_(kind) {}
    GeometryErrorKind kind() const { return kind_; }

private:
    GeometryErrorKind kind_;
};

} // namespace romkit

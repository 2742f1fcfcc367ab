#pragma once

#include <stdexcept>
#include <string>

namespace kw {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syntax error in an expression or file, with a 0-based input position.
struct ParseError : Error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg), pos(position) {}
};

/// A bracket table that no generator reproduces; carries the violated relation.
struct TableError : Error {
    std::string relation;
    explicit TableError(const std::string& msg, std::string rel = {})
        : Error(msg), relation(std::move(rel)) {}
};

} // namespace kw

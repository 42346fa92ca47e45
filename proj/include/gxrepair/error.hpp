#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gxr {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input files: JSON graphs, weight and order files, DIMACS.
class LoadError : public Error {
public:
    LoadError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(line ? std::to_string(line) + ":" + std::to_string(column) + ": " + what : what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Syntax errors in path/node expressions and constraint files.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class AlphabetError : public Error {
public:
    using Error::Error;
};

// Caller violated a precondition (unknown node, duplicate id, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Exhaustive search would exceed the configured number of atoms or candidates.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// The requested operation is not defined for this constraint class.
class Unsupported : public Error {
public:
    using Error::Error;
};

// Counter bound above the evaluator limit.
class EvalLimit : public Error {
public:
    using Error::Error;
};

class Overflow : public Error {
public:
    using Error::Error;
};

} // namespace gxr

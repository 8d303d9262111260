// error.hpp -- exception types shared by every orbitscope module

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitscope {

/// Input violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A malformed input file. Carries (file, line, column) provenance; line and
/// column are 1-based, column 0 means "whole line".
class ParseError : public ValidationError
{
public:
    ParseError(std::string file, std::size_t line, std::size_t column,
               const std::string& message)
      : ValidationError(format(file, line, column, message)),
        _file(std::move(file)), _line(line), _column(column)
    {
    }

    const std::string& file() const noexcept { return _file; }
    std::size_t line() const noexcept { return _line; }
    std::size_t column() const noexcept { return _column; }

private:
    static std::string format(const std::string& file, std::size_t line,
                              std::size_t column, const std::string& message)
    {
        std::string out = file + ":" + std::to_string(line);
        if (column > 0)
            out += ":" + std::to_string(column);
        return out + ": " + message;
    }

    std::string _file;
    std::size_t _line;
    std::size_t _column;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace orbitscope

// csv.hpp -- minimal strict CSV record reader with line provenance.

#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace orbitscope {

/// Reads comma-separated records one physical line at a time. Accepts LF or
/// CRLF endings and double-quoted fields (no embedded newlines). Blank lines
/// are skipped.
class CsvReader
{
public:
    CsvReader(std::istream& in, std::string source);

    /// Returns false at end of input. Throws ParseError on an unterminated
    /// quote or an I/O failure.
    bool next(std::vector<std::string>& fields);

    /// 1-based line number of the record last returned.
    std::size_t line() const noexcept { return _line; }
    const std::string& source() const noexcept { return _source; }

    /// Throws ParseError at the current line; column is 1-based (0 = line).
    [[noreturn]] void fail(std::size_t column, const std::string& message) const;

    /// Reads the header and checks it against `expected` exactly.
    void expect_header(const std::vector<std::string>& expected);

private:
    std::istream& _in;
    std::string _source;
    std::size_t _line = 0;
    std::string _buffer;
};

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);

/// Parses a whole decimal integer; rejects signs other than a leading '-',
/// blanks and trailing characters.
bool parse_integer(std::string_view text, long long& out);

} // namespace orbitscope

#include "orbitscope/csv.hpp"

#include "orbitscope/error.hpp"

#include <charconv>

namespace orbitscope {

CsvReader::CsvReader(std::istream& in, std::string source)
  : _in(in), _source(std::move(source))
{
}

bool CsvReader::next(std::vector<std::string>& fields)
{
    fields.clear();
    while (std::getline(_in, _buffer))
    {
        ++_line;
        if (!_buffer.empty() && _buffer.back() == '\r')
            _buffer.pop_back();
        if (_line == 1 && _buffer.starts_with("\xEF\xBB\xBF"))
            _buffer.erase(0, 3);
        if (_buffer.empty())
            continue;

        std::string field;
        bool quoted = false;
        bool was_quoted = false;
        for (std::size_t k = 0; k < _buffer.size(); ++k)
        {
            const char c = _buffer[k];
            if (quoted)
            {
                if (c == '"')
                {
                    if (k + 1 < _buffer.size() && _buffer[k + 1] == '"')
                    {
                        field.push_back('"');
                        ++k;
                    }
                    else
                        quoted = false;
                }
                else
                    field.push_back(c);
            }
            else if (c == '"' && field.empty() && !was_quoted)
            {
                quoted = true;
                was_quoted = true;
            }
            else if (c == ',')
            {
                fields.push_back(std::move(field));
                field.clear();
                was_quoted = false;
            }
            else if (c == '"')
                fail(fields.size() + 1, "stray quote in field");
            else
                field.push_back(c);
        }
        if (quoted)
            fail(fields.size() + 1, "unterminated quoted field");
        fields.push_back(std::move(field));
        return true;
    }
    if (_in.bad())
        throw IoError("read error in " + _source);
    return false;
}

void CsvReader::fail(std::size_t column, const std::string& message) const
{
    throw ParseError(_source, _line, column, message);
}

void CsvReader::expect_header(const std::vector<std::string>& expected)
{
    std::vector<std::string> header;
    if (!next(header))
        throw ParseError(_source, 1, 0, "missing header row");
    if (header.size() != expected.size())
        fail(0, "header has " + std::to_string(header.size()) + " columns, expected " +
                    std::to_string(expected.size()));
    for (std::size_t k = 0; k < expected.size(); ++k)
        if (header[k] != expected[k])
            fail(k + 1, "header column '" + header[k] + "', expected '" + expected[k] + "'");
}

std::string csv_field(std::string_view value)
{
    if (value.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(value);
    std::string out = "\"";
    for (char c : value)
    {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

bool parse_integer(std::string_view text, long long& out)
{
    if (text.empty())
        return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

} // namespace orbitscope

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ledgertopo::csv {

/// RFC 4180 reader: quoted fields may contain separators, doubled quotes and
/// newlines. Accepts LF and CRLF line endings and a leading UTF-8 BOM.
class Reader {
public:
    explicit Reader(std::istream& in, char separator = ',');

    /// Reads the next record into `fields`. Returns false at end of input.
    /// Throws DataError on an unterminated quoted field.
    bool next(std::vector<std::string>& fields);

    /// 1-based physical line on which the last returned record started.
    std::size_t line() const { return record_line_; }

private:
    std::istream& in_;
    char sep_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
    bool first_ = true;
};

/// Quotes a field only when it contains a separator, quote, or line break.
std::string escape(std::string_view field, char separator = ',');

void write_row(std::ostream& out, const std::vector<std::string>& fields, char separator = ',');

} // namespace ledgertopo::csv

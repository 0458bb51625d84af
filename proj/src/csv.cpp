#include "ledgertopo/csv.hpp"

#include "ledgertopo/errors.hpp"

namespace ledgertopo::csv {

Reader::Reader(std::istream& in, char separator) : in_(in), sep_(separator) {}

bool Reader::next(std::vector<std::string>& fields) {
    fields.clear();
    if (first_) {
        first_ = false;
        if (in_.peek() == 0xEF) {
            char bom[3];
            in_.read(bom, 3);
            if (!(bom[0] == '\xEF' && bom[1] == '\xBB' && bom[2] == '\xBF')) {
                for (int k = 2; k >= 0; --k) in_.putback(bom[k]);
            }
        }
    }

    int c = in_.get();
    // Skip blank lines between records.
    while (c == '\n' || c == '\r') {
        if (c == '\n') ++line_;
        c = in_.get();
    }
    if (c == EOF) return false;
    record_line_ = line_;

    std::string field;
    bool quoted = false;
    bool field_started_quoted = false;
    for (;; c = in_.get()) {
        if (quoted) {
            if (c == EOF) throw DataError("unterminated quoted field", record_line_);
            if (c == '"') {
                if (in_.peek() == '"') {
                    field.push_back('"');
                    in_.get();
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line_;
                field.push_back(static_cast<char>(c));
            }
            continue;
        }
        if (c == '"' && field.empty() && !field_started_quoted) {
            quoted = true;
            field_started_quoted = true;
            continue;
        }
        if (c == sep_) {
            fields.push_back(std::move(field));
            field.clear();
            field_started_quoted = false;
            continue;
        }
        if (c == '\r' && in_.peek() == '\n') continue;
        if (c == '\n' || c == EOF) {
            if (c == '\n') ++line_;
            fields.push_back(std::move(field));
            return true;
        }
        field.push_back(static_cast<char>(c));
    }
}

std::string escape(std::string_view field, char separator) {
    if (field.find_first_of(std::string{separator, '"', '\n', '\r'}) == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields, char separator) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(separator);
        out << escape(fields[i], separator);
    }
    out.put('\n');
}

} // namespace ledgertopo::csv

#include "ledgertopo/timestamp.hpp"

#include <cctype>
#include <cstdio>

namespace ledgertopo {

namespace {

bool read_int(std::string_view text, std::size_t& pos, std::size_t width, int& out) {
    if (pos + width > text.size()) return false;
    int v = 0;
    for (std::size_t k = 0; k < width; ++k) {
        const char c = text[pos + k];
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        v = v * 10 + (c - '0');
    }
    pos += width;
    out = v;
    return true;
}

bool expect(std::string_view text, std::size_t& pos, char c) {
    if (pos < text.size() && text[pos] == c) {
        ++pos;
        return true;
    }
    return false;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

std::optional<Instant> parse_iso8601(std::string_view raw) {
    using namespace std::chrono;
    const std::string_view text = trim(raw);
    std::size_t pos = 0;
    int y, mo, d;
    if (!read_int(text, pos, 4, y) || !expect(text, pos, '-') || !read_int(text, pos, 2, mo) ||
        !expect(text, pos, '-') || !read_int(text, pos, 2, d))
        return std::nullopt;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;

    int hh = 0, mm = 0, ss = 0;
    if (pos < text.size()) {
        if (text[pos] != 'T' && text[pos] != ' ') return std::nullopt;
        ++pos;
        if (!read_int(text, pos, 2, hh) || !expect(text, pos, ':') || !read_int(text, pos, 2, mm))
            return std::nullopt;
        if (expect(text, pos, ':') && !read_int(text, pos, 2, ss)) return std::nullopt;
        if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
        if (expect(text, pos, '.') || expect(text, pos, ',')) {
            const std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) return std::nullopt;
        }
    }

    int offset_minutes = 0;
    if (pos < text.size()) {
        if (text[pos] == 'Z' || text[pos] == 'z') {
            ++pos;
        } else if (text[pos] == '+' || text[pos] == '-') {
            const int sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            int oh, om = 0;
            if (!read_int(text, pos, 2, oh)) return std::nullopt;
            expect(text, pos, ':');
            if (pos < text.size() && !read_int(text, pos, 2, om)) return std::nullopt;
            offset_minutes = sign * (oh * 60 + om);
        }
    }
    if (pos != text.size()) return std::nullopt;

    return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} - minutes{offset_minutes};
}

std::optional<Instant> parse_epoch(std::string_view raw) {
    const std::string_view text = trim(raw);
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool negative = false;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        i = 1;
    }
    if (i == text.size() || text.size() - i > 18) return std::nullopt;
    long long v = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
        v = v * 10 + (text[i] - '0');
    }
    return Instant{Seconds{negative ? -v : v}};
}

std::optional<Instant> parse_timestamp(std::string_view text, TimestampFormat format) {
    switch (format) {
    case TimestampFormat::Iso8601:
        return parse_iso8601(text);
    case TimestampFormat::Epoch:
        return parse_epoch(text);
    case TimestampFormat::Auto:
        break;
    }
    if (auto epoch = parse_epoch(text)) return epoch;
    return parse_iso8601(text);
}

std::string format_iso8601(Instant t) {
    using namespace std::chrono;
    const sys_days day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    const hh_mm_ss<seconds> tod{t - day_point};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf;
}

std::optional<TimestampFormat> timestamp_format_from_string(std::string_view name) {
    if (name == "auto") return TimestampFormat::Auto;
    if (name == "iso8601" || name == "iso") return TimestampFormat::Iso8601;
    if (name == "epoch") return TimestampFormat::Epoch;
    return std::nullopt;
}

} // namespace ledgertopo

#include "ledgertopo/amount.hpp"

#include <cctype>
#include <cstdlib>

namespace ledgertopo {

namespace {

constexpr __int128 kMaxMicros = INT64_MAX;

} // namespace

std::optional<Amount> Amount::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    bool negative = false;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }

    // Accumulate significant digits as an integer with a decimal exponent.
    __int128 mantissa = 0;
    int exponent = 0;
    int digits = 0;
    bool seen_dot = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) break;
        ++digits;
        if (mantissa < (__int128(1) << 100)) {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_dot) --exponent;
        } else if (!seen_dot) {
            ++exponent; // precision beyond ~30 digits is irrelevant at micro scale
        }
    }
    if (digits == 0) return std::nullopt;

    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') return std::nullopt;
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        if (i >= text.size()) return std::nullopt;
        int e = 0;
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
            e = e * 10 + (text[i] - '0');
            if (e > 400) return std::nullopt;
        }
        exponent += exp_negative ? -e : e;
    }

    int shift = exponent + kDigits;
    __int128 micros = mantissa;
    if (shift >= 0) {
        for (; shift > 0; --shift) {
            micros *= 10;
            if (micros > kMaxMicros) return std::nullopt;
        }
    } else {
        if (shift < -37) {
            micros = 0;
        } else {
            __int128 divisor = 1;
            for (; shift < 0; ++shift) divisor *= 10;
            const __int128 q = mantissa / divisor;
            const __int128 r = mantissa % divisor;
            micros = q + (2 * r >= divisor ? 1 : 0);
        }
    }
    if (micros > kMaxMicros) return std::nullopt;
    const auto value = static_cast<std::int64_t>(micros);
    return Amount(negative ? -value : value);
}

std::string Amount::to_string() const {
    const bool negative = micros_ < 0;
    const std::uint64_t abs = negative ? 0 - static_cast<std::uint64_t>(micros_) : static_cast<std::uint64_t>(micros_);
    std::string frac = std::to_string(abs % kScale);
    frac.insert(0, kDigits - frac.size(), '0');
    while (frac.size() > 2 && frac.back() == '0') frac.pop_back();
    return (negative ? "-" : "") + std::to_string(abs / kScale) + "." + frac;
}

} // namespace ledgertopo

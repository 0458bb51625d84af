#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace ledgertopo {

using Instant = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

enum class TimestampFormat { Auto, Iso8601, Epoch };

/// "2020-01-25 13:04:05", "2020-01-25T13:04:05.123Z", "2020-01-25T13:04:05+03:00",
/// "2020-01-25". Fractional seconds are truncated; offsets are normalized to UTC.
std::optional<Instant> parse_iso8601(std::string_view text);

std::optional<Instant> parse_epoch(std::string_view text);

/// Auto picks epoch for an all-digit (optionally signed) field, ISO-8601 otherwise.
std::optional<Instant> parse_timestamp(std::string_view text, TimestampFormat format);

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_iso8601(Instant t);

std::optional<TimestampFormat> timestamp_format_from_string(std::string_view name);

} // namespace ledgertopo

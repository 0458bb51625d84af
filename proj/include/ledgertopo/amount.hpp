#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ledgertopo {

/// Exact decimal currency amount stored as an integer count of micro-units.
class Amount {
public:
    static constexpr std::int64_t kScale = 1'000'000;
    static constexpr int kDigits = 6;

    constexpr Amount() = default;

    static constexpr Amount from_micros(std::int64_t micros) { return Amount(micros); }
    static constexpr Amount from_units(std::int64_t units) { return Amount(units * kScale); }

    /// Parses "12", "12.5", "-0.25", "1e3", "1.5E-2". Digits beyond the sixth
    /// fractional place are rounded half away from zero. nullopt on junk.
    static std::optional<Amount> parse(std::string_view text);

    constexpr std::int64_t micros() const { return micros_; }
    double to_double() const { return static_cast<double>(micros_) / kScale; }

    /// Shortest exact rendering with at least two fractional digits: "12.00", "0.125".
    std::string to_string() const;

    constexpr Amount& operator+=(Amount o) {
        micros_ += o.micros_;
        return *this;
    }
    constexpr Amount& operator-=(Amount o) {
        micros_ -= o.micros_;
        return *this;
    }
    friend constexpr Amount operator+(Amount a, Amount b) { return a += b; }
    friend constexpr Amount operator-(Amount a, Amount b) { return a -= b; }
    friend constexpr auto operator<=>(Amount, Amount) = default;

private:
    constexpr explicit Amount(std::int64_t micros) : micros_(micros) {}
    std::int64_t micros_ = 0;
};

} // namespace ledgertopo

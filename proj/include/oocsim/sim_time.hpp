#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace oocsim {

// Fixed-point simulated time. Stored as integer microseconds, reported in ms.
class SimTime {
public:
    constexpr SimTime() = default;

    static constexpr SimTime from_us(std::int64_t us) { return SimTime(us); }
    static constexpr SimTime from_ms(std::int64_t ms) { return SimTime(ms * 1000); }
    // Rounds to the nearest microsecond.
    static SimTime from_ms_real(double ms);

    constexpr std::int64_t us() const { return us_; }
    constexpr double ms() const { return static_cast<double>(us_) / 1000.0; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime o) const { return SimTime(us_ + o.us_); }
    constexpr SimTime operator-(SimTime o) const { return SimTime(us_ - o.us_); }
    constexpr SimTime operator*(std::int64_t k) const { return SimTime(us_ * k); }
    constexpr SimTime& operator+=(SimTime o) { us_ += o.us_; return *this; }

    // Exact decimal rendering in milliseconds, e.g. "12.345".
    std::string to_string() const;

private:
    constexpr explicit SimTime(std::int64_t us) : us_(us) {}
    std::int64_t us_ = 0;
};

// Parses a non-negative decimal millisecond value ("10", "0.25", "1e3" is
// rejected) into exact microseconds. Digits beyond the third decimal place
// must be zero.
std::optional<SimTime> parse_ms(std::string_view text);

}  // namespace oocsim

#include "oocsim/sim_time.hpp"

#include <cmath>
#include <cstdio>

namespace oocsim {

SimTime SimTime::from_ms_real(double ms)
{
    return SimTime(static_cast<std::int64_t>(std::llround(ms * 1000.0)));
}

std::string SimTime::to_string() const
{
    const std::int64_t whole = us_ / 1000;
    const std::int64_t frac = us_ % 1000;
    char buf[48];
    if (us_ < 0) {
        std::snprintf(buf, sizeof buf, "-%lld.%03lld", static_cast<long long>(-whole),
                      static_cast<long long>(-frac));
    } else {
        std::snprintf(buf, sizeof buf, "%lld.%03lld", static_cast<long long>(whole),
                      static_cast<long long>(frac));
    }
    return buf;
}

std::optional<SimTime> parse_ms(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    std::int64_t whole = 0;
    std::int64_t frac = 0;
    int frac_digits = 0;
    bool seen_dot = false;
    bool any_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (seen_dot)
                return std::nullopt;
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9')
            return std::nullopt;
        any_digit = true;
        const int d = c - '0';
        if (!seen_dot) {
            if (whole > (INT64_MAX / 1000 - 9) / 10)
                return std::nullopt;
            whole = whole * 10 + d;
        } else if (frac_digits < 3) {
            frac = frac * 10 + d;
            ++frac_digits;
        } else if (d != 0) {
            return std::nullopt;  // sub-microsecond precision
        }
    }
    if (!any_digit)
        return std::nullopt;
    while (frac_digits < 3) {
        frac *= 10;
        ++frac_digits;
    }
    return SimTime::from_us(whole * 1000 + frac);
}

}  // namespace oocsim

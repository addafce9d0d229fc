#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "oocsim/packet.hpp"
#include "oocsim/sim_time.hpp"

namespace oocsim {

// Per-run aggregates. Goodput figures are delivered packets per second of
// simulated time; the halves split [0, sim_duration] at its midpoint.
struct Metrics {
    std::string scheme;
    std::uint64_t seed = 0;
    SimTime sim_duration;
    std::uint64_t delivered = 0;
    std::uint64_t data_transmissions_total = 0;
    std::uint64_t retransmissions = 0;
    std::uint64_t timeout_events = 0;
    std::uint64_t duplicates_at_sink = 0;
    std::uint64_t out_of_order_drops = 0;
    std::uint64_t overflow_drops = 0;
    std::uint64_t forced_drops = 0;
    std::uint64_t random_drops = 0;
    std::uint64_t cache_full_drops = 0;
    double goodput = 0.0;
    double goodput_first_half = 0.0;
    double goodput_second_half = 0.0;
    double final_srtt_ms = 0.0;
    double final_rto_ms = 0.0;
    std::uint64_t peak_cache_occupancy = 0;
    // Index k holds the number of transmissions of packet k + 1.
    std::vector<std::uint32_t> transmit_counts;
};

inline constexpr std::string_view kMetricsCsvHeader =
    "scheme,seed,sim_duration_ms,delivered,data_transmissions_total,retransmissions,"
    "timeout_events,duplicates_at_sink,out_of_order_drops,overflow_drops,forced_drops,"
    "random_drops,cache_full_drops,goodput_pps,goodput_first_half_pps,goodput_second_half_pps,"
    "final_srtt_ms,final_rto_ms,peak_cache_occupancy,transmit_counts";

// One CSV row, no trailing newline. transmit_counts is ';'-separated.
std::string metrics_csv_row(const Metrics& m);
void write_metrics_csv(std::ostream& out, const std::vector<Metrics>& rows);
std::vector<Metrics> read_metrics_csv(std::istream& in);

}  // namespace oocsim

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oocsim/metrics.hpp"
#include "oocsim/net_path.hpp"
#include "oocsim/scenario.hpp"
#include "oocsim/sink.hpp"
#include "oocsim/trace.hpp"

namespace oocsim {

struct SinkArrival {
    SimTime at;
    Seq seq = 0;
    std::uint32_t attempt = 0;
    Disposition disposition = Disposition::Delivered;
};

// Everything a run produces: the metrics row plus the time series that the
// canned experiments inspect.
struct RunResult {
    Metrics metrics;
    Trace trace;
    bool completed = false;  // all packets delivered before the stop
    double initial_rto_ms = 0.0;

    std::vector<Seq> delivered;
    std::vector<SimTime> delivery_times;
    std::vector<SinkArrival> sink_arrivals;

    std::vector<double> rto_at_expiry;
    std::vector<SimTime> expiry_times;
    std::vector<std::uint64_t> transmissions_at_expiry;
    std::vector<SimTime> ack_progress_times;

    PathCounters path;
    std::uint64_t events_scheduled = 0;
    std::uint64_t events_dispatched = 0;
    std::uint64_t events_cancelled = 0;
    std::uint64_t events_pending = 0;
    std::uint64_t invariant_checks = 0;
};

// Runs one scenario in a fresh engine. Deterministic for a fixed config.
// Throws ConfigError for invalid configs and SimulationError for protocol or
// invariant violations.
RunResult simulate(const ScenarioConfig& config);

// simulate() plus the metrics and trace CSV files named in the config.
Metrics run_scenario(const ScenarioConfig& config);

// Runs `base` under ooc1..ooc4 (same seed, same loss plan), concurrently.
// Writes a comparison CSV when out_csv is non-empty.
std::vector<Metrics> compare_schemes(const ScenarioConfig& base, const std::string& out_csv = {});

}  // namespace oocsim

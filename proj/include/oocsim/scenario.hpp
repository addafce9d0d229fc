#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "oocsim/net_path.hpp"
#include "oocsim/rtt_estimator.hpp"
#include "oocsim/sink.hpp"
#include "oocsim/source.hpp"

namespace oocsim {

// The four out-of-order caching schemes:
//   ooc1 optimistic/non-caching   ooc2 pessimistic/non-caching
//   ooc3 pessimistic/caching      ooc4 optimistic/caching
enum class Scheme : std::uint8_t { Ooc1 = 1, Ooc2 = 2, Ooc3 = 3, Ooc4 = 4 };

inline constexpr Scheme kAllSchemes[] = {Scheme::Ooc1, Scheme::Ooc2, Scheme::Ooc3, Scheme::Ooc4};

struct SchemePolicy {
    SourceMode source;
    SinkMode sink;
};

SchemePolicy policy_for(Scheme s);
Scheme scheme_for(SourceMode source, SinkMode sink);
std::string_view to_string(Scheme s);
// Accepts "ooc1".."ooc4"; "ooo1".."ooo4" are taken as the same schemes.
std::optional<Scheme> parse_scheme(std::string_view text);

enum class StopKind : std::uint8_t { MaxTime, Delivered, QueueEmpty };

std::string_view to_string(StopKind s);

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct ScenarioConfig {
    SourceMode source_mode = SourceMode::Optimistic;
    SinkMode sink_mode = SinkMode::Caching;
    std::optional<std::size_t> cache_capacity;

    std::size_t window = 4;
    Seq packets = 100;
    SimTime send_interval;
    TimerParams timer;

    LinkConfig link;
    RouterConfig router;
    LossPlan loss;
    SimTime cross_interarrival;

    std::uint64_t seed = 1;
    StopKind stop = StopKind::Delivered;
    // Hard horizon for every stop kind. The default is far enough out that a
    // run whose timers have diverged to rto_max still finishes.
    SimTime max_time = SimTime::from_ms(1'000'000'000'000'000);

    std::string metrics_out;
    std::string trace_out;
    // Record the per-event trace in memory (implied by trace_out).
    bool record_trace = false;
    // Verify model invariants after every dispatched event.
    bool check_invariants = false;

    Scheme scheme() const { return scheme_for(source_mode, sink_mode); }
    void set_scheme(Scheme s);

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// Applies one key=value setting. Throws ConfigError for unknown keys or bad
// values.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);
// Flat UTF-8 key=value lines; '#' starts a comment; blank lines ignored.
ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config_file(const std::string& path);
// Renders every field in a form parse_config accepts.
std::string render_config(const ScenarioConfig& config);

// Canned reproductions.

// A single lost first copy of packet 1 under ooc1, with application pacing
// slower than the path round trip, so packets 2-4 are sent and discarded
// before packet 1's retransmission lands.
ScenarioConfig scenario_figure1();

// C packets outstanding and exactly n timer expiries before the first ack
// progress. Nothing is lost; the reverse delay holds the first ack back until
// just after the n-th expiry, so every expiry is a false alarm.
ScenarioConfig scenario_forced_timeouts(std::size_t window, std::size_t timeouts, SourceMode policy);

// Greedy source through a small drop-tail buffer shared with Poisson cross
// traffic; losses come only from buffer overflow.
ScenarioConfig scenario_congestion(Scheme scheme = Scheme::Ooc1, std::uint64_t seed = 1);

// Ample buffer, paced source, one lost packet.
ScenarioConfig scenario_light_load(Scheme scheme = Scheme::Ooc4);

}  // namespace oocsim

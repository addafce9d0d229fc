#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "oocsim/engine.hpp"
#include "oocsim/packet.hpp"
#include "oocsim/rtt_estimator.hpp"
#include "oocsim/trace.hpp"

namespace oocsim {

// What the source assumes on a timeout. Optimistic resends only the packet
// whose timer fired; pessimistic resends every unacknowledged packet.
enum class SourceMode : std::uint8_t { Optimistic, Pessimistic };

const char* to_string(SourceMode m);

struct SourceConfig {
    SourceMode mode = SourceMode::Optimistic;
    std::size_t window = 4;
    Seq total_packets = 100;
    // Packet k becomes available for first transmission at (k - 1) * interval
    // after start(). Zero means all data is available immediately.
    SimTime send_interval;
    TimerParams timer;
};

// Fixed-window sender with cumulative acks and one retransmission timer per
// outstanding packet.
class Source {
public:
    using Transmit = std::function<void(const Packet&)>;

    Source(Engine& engine, SourceConfig config, Transmit transmit, Trace* trace = nullptr);

    Source(const Source&) = delete;
    Source& operator=(const Source&) = delete;

    void start();

    // Sends fresh data while the window and data availability allow.
    std::vector<Seq> try_send_new();
    // Handles the expiry of seq's timer. Stale expiries are a no-op.
    std::vector<Seq> on_timer_expiry(Seq seq);
    // Processes a cumulative ack; returns the newly acknowledged sequence
    // numbers. Acking data never sent is a protocol violation.
    std::vector<Seq> on_ack(Seq ack_num);

    bool finished() const { return last_acked_ == config_.total_packets; }

    const SourceConfig& config() const { return config_; }
    Seq last_acked() const { return last_acked_; }
    Seq next_new_seq() const { return next_new_seq_; }
    std::size_t outstanding() const { return unacked_.size(); }
    std::vector<Seq> unacked() const;
    bool has_live_timer(Seq seq) const;
    // Transmissions of seq so far (0 if never sent).
    std::uint32_t transmit_count(Seq seq) const;
    const std::vector<std::uint32_t>& transmit_counts() const { return transmit_counts_; }

    double srtt_ms() const { return estimator_.srtt_ms(); }
    double rto_ms() const { return estimator_.rto_ms(); }
    const RttEstimator& estimator() const { return estimator_; }

    std::uint64_t transmissions() const { return transmissions_; }
    std::uint64_t retransmissions() const { return retransmissions_; }
    std::uint64_t timeout_events() const { return timeout_events_; }

    // Entry 0: transmissions when the first expiry fired. Entry k: after the
    // k-th expiry was handled.
    const std::vector<std::uint64_t>& transmissions_at_expiry() const { return transmissions_at_expiry_; }
    // rto in force when each expiry fired.
    const std::vector<double>& rto_at_expiry() const { return rto_at_expiry_; }
    const std::vector<SimTime>& expiry_times() const { return expiry_times_; }
    // Times at which the cumulative ack advanced.
    const std::vector<SimTime>& ack_progress_times() const { return ack_progress_times_; }

private:
    struct Outstanding {
        EventHandle timer;
        std::uint32_t attempts = 0;
        SimTime first_sent;
    };

    SimTime available_at(Seq seq) const;
    void transmit(Seq seq, Outstanding& out);
    void arm_timer(Seq seq, Outstanding& out);
    void on_timer_fired(Seq seq);

    Engine& engine_;
    SourceConfig config_;
    Transmit transmit_;
    Trace* trace_;
    RttEstimator estimator_;

    SimTime start_time_;
    Seq next_new_seq_ = 1;
    Seq last_acked_ = 0;
    std::map<Seq, Outstanding> unacked_;
    EventHandle send_opportunity_;

    std::vector<std::uint32_t> transmit_counts_;
    std::uint64_t transmissions_ = 0;
    std::uint64_t retransmissions_ = 0;
    std::uint64_t timeout_events_ = 0;
    std::vector<std::uint64_t> transmissions_at_expiry_;
    std::vector<double> rto_at_expiry_;
    std::vector<SimTime> expiry_times_;
    std::vector<SimTime> ack_progress_times_;
};

}  // namespace oocsim

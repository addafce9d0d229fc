#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <utility>

#include "oocsim/engine.hpp"
#include "oocsim/packet.hpp"
#include "oocsim/rng.hpp"
#include "oocsim/trace.hpp"

namespace oocsim {

struct LinkConfig {
    // Source to router.
    SimTime forward_prop_delay = SimTime::from_ms(10);
    // Router departure to sink.
    SimTime delivery_delay;
    // Sink to source; acks bypass the router.
    SimTime reverse_prop_delay = SimTime::from_ms(10);
    bool ack_lossless = true;
};

struct RouterConfig {
    // Waiting room, not counting the packet in service.
    std::size_t capacity = 1000;
    SimTime service_time = SimTime::from_ms(1);
};

struct LossPlan {
    // (seq, attempt) pairs dropped on the forward path, each at most once.
    std::set<std::pair<Seq, std::uint32_t>> forced_drops;
    // Applied per forward data packet, and per ack when acks are lossy.
    double bernoulli_p = 0.0;
};

struct CrossTrafficConfig {
    // Mean of the exponential interarrival time at the router; zero disables.
    SimTime mean_interarrival;
};

enum class ForwardOutcome : std::uint8_t { Accepted, DroppedForced, DroppedRandom };
enum class ReverseOutcome : std::uint8_t { Accepted, DroppedRandom };

struct PathCounters {
    // Connection data packets.
    std::uint64_t data_sent = 0;
    std::uint64_t sink_arrivals = 0;
    std::uint64_t forced_drops = 0;
    std::uint64_t random_drops = 0;
    std::uint64_t overflow_drops = 0;
    std::uint64_t data_in_flight = 0;

    std::uint64_t acks_sent = 0;
    std::uint64_t acks_delivered = 0;
    std::uint64_t acks_dropped = 0;
    std::uint64_t acks_in_flight = 0;

    std::uint64_t cross_arrivals = 0;
    std::uint64_t cross_served = 0;
    std::uint64_t cross_overflow = 0;

    std::size_t peak_queue = 0;
};

// Source -> access link -> drop-tail FIFO router -> delivery link -> sink,
// plus a pure-delay ack channel back to the source. Nothing on the path
// reorders packets.
class NetPath {
public:
    using Handler = std::function<void(const Packet&)>;

    NetPath(Engine& engine, LinkConfig link, RouterConfig router, LossPlan loss,
            CrossTrafficConfig cross, std::uint64_t seed, Trace* trace = nullptr);

    void set_sink_handler(Handler h) { to_sink_ = std::move(h); }
    void set_source_handler(Handler h) { to_source_ = std::move(h); }

    // Injects a data packet at the current clock.
    ForwardOutcome send_forward(const Packet& pkt);
    // Injects an ack at the current clock.
    ReverseOutcome send_reverse(const Packet& ack);

    // Starts the seeded cross-traffic arrival process, if configured.
    void start_cross_traffic();

    // Pops the queue head into service. Requires a non-empty queue and an
    // idle server; completion is scheduled one service time later.
    Packet router_dequeue_next();

    std::size_t queue_length() const { return queue_.size(); }
    bool busy() const { return busy_; }
    const RouterConfig& router_config() const { return router_; }
    const PathCounters& counters() const { return counters_; }

private:
    void arrive_at_router(const Packet& pkt);
    void complete_service(const Packet& pkt);
    void schedule_cross_arrival();

    Engine& engine_;
    LinkConfig link_;
    RouterConfig router_;
    LossPlan loss_;
    CrossTrafficConfig cross_;
    RngStream data_loss_rng_;
    RngStream ack_loss_rng_;
    RngStream cross_rng_;
    Trace* trace_;

    Handler to_sink_;
    Handler to_source_;

    std::deque<Packet> queue_;
    bool busy_ = false;
    std::uint64_t cross_next_id_ = 1;
    PathCounters counters_;
};

}  // namespace oocsim

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "oocsim/sim_time.hpp"

namespace oocsim {

// Raised for programming errors inside a run: scheduling into the past,
// protocol violations, broken invariants. The run cannot continue.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NodeId : std::uint8_t { Source, Router, Sink, CrossTraffic, Harness };
enum class EventKind : std::uint8_t { PacketArrival, TimerExpiry, SendOpportunity, MeasurementTick };

const char* to_string(NodeId n);
const char* to_string(EventKind k);

struct EventHandle {
    std::uint64_t id = 0;  // 0 never refers to a scheduled event
    bool valid() const { return id != 0; }
};

struct DispatchRecord {
    SimTime at;
    std::uint64_t seq_id = 0;
    NodeId target = NodeId::Harness;
    EventKind kind = EventKind::PacketArrival;

    bool operator==(const DispatchRecord&) const = default;
};

class StopCondition {
public:
    static StopCondition queue_empty() { return StopCondition{}; }
    static StopCondition at_time(SimTime max_time);
    // Stops once `done` holds (checked before every dispatch), or at max_time.
    static StopCondition when(std::function<bool()> done, std::optional<SimTime> max_time = {});

    const std::optional<SimTime>& max_time() const { return max_time_; }
    bool satisfied() const { return done_ && done_(); }

private:
    std::optional<SimTime> max_time_;
    std::function<bool()> done_;
};

// Single-threaded discrete-event core. Events are dispatched in strict
// (fire_at, seq_id) order where seq_id is a global insertion counter.
class Engine {
public:
    using Action = std::function<void()>;
    using DispatchHook = std::function<void(const DispatchRecord&)>;

    EventHandle schedule(SimTime fire_at, NodeId target, EventKind kind, Action action);
    EventHandle schedule_after(SimTime delay, NodeId target, EventKind kind, Action action)
    {
        return schedule(now_ + delay, target, kind, std::move(action));
    }

    // True iff the event had not fired and is now dead.
    bool cancel(EventHandle handle);
    bool is_pending(EventHandle handle) const { return live_.contains(handle.id); }

    SimTime run_until(const StopCondition& stop);

    SimTime now() const { return now_; }
    std::size_t pending() const { return live_.size(); }

    std::uint64_t scheduled_count() const { return next_id_ - 1; }
    std::uint64_t dispatched_count() const { return dispatched_; }
    std::uint64_t cancelled_count() const { return cancelled_; }

    // Called after every dispatched action returns.
    void set_dispatch_hook(DispatchHook hook) { hook_ = std::move(hook); }
    void enable_dispatch_log(bool on) { log_enabled_ = on; }
    const std::vector<DispatchRecord>& dispatch_log() const { return log_; }

private:
    struct Key {
        std::int64_t fire_at_us;
        std::uint64_t id;
        bool operator>(const Key& o) const
        {
            return fire_at_us != o.fire_at_us ? fire_at_us > o.fire_at_us : id > o.id;
        }
    };
    struct Slot {
        NodeId target;
        EventKind kind;
        Action action;
    };

    SimTime now_;
    std::uint64_t next_id_ = 1;
    std::uint64_t dispatched_ = 0;
    std::uint64_t cancelled_ = 0;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> heap_;
    std::unordered_map<std::uint64_t, Slot> live_;
    DispatchHook hook_;
    bool log_enabled_ = false;
    std::vector<DispatchRecord> log_;
};

}  // namespace oocsim

#include "oocsim/engine.hpp"

namespace oocsim {

const char* to_string(NodeId n)
{
    switch (n) {
    case NodeId::Source: return "src";
    case NodeId::Router: return "rtr";
    case NodeId::Sink: return "snk";
    case NodeId::CrossTraffic: return "xtr";
    case NodeId::Harness: return "hns";
    }
    return "?";
}

const char* to_string(EventKind k)
{
    switch (k) {
    case EventKind::PacketArrival: return "packet-arrival";
    case EventKind::TimerExpiry: return "timer-expiry";
    case EventKind::SendOpportunity: return "send-opportunity";
    case EventKind::MeasurementTick: return "measurement-tick";
    }
    return "?";
}

StopCondition StopCondition::at_time(SimTime max_time)
{
    StopCondition s;
    s.max_time_ = max_time;
    return s;
}

StopCondition StopCondition::when(std::function<bool()> done, std::optional<SimTime> max_time)
{
    StopCondition s;
    s.done_ = std::move(done);
    s.max_time_ = max_time;
    return s;
}

EventHandle Engine::schedule(SimTime fire_at, NodeId target, EventKind kind, Action action)
{
    if (fire_at < now_) {
        throw SimulationError("event in past: fire_at=" + fire_at.to_string() + " ms, clock=" +
                              now_.to_string() + " ms, kind=" + to_string(kind) +
                              ", target=" + to_string(target));
    }
    const std::uint64_t id = next_id_++;
    heap_.push(Key{fire_at.us(), id});
    live_.emplace(id, Slot{target, kind, std::move(action)});
    return EventHandle{id};
}

bool Engine::cancel(EventHandle handle)
{
    // The heap entry stays behind and is skipped when it surfaces.
    if (live_.erase(handle.id) == 0)
        return false;
    ++cancelled_;
    return true;
}

SimTime Engine::run_until(const StopCondition& stop)
{
    const auto& max_time = stop.max_time();
    for (;;) {
        if (stop.satisfied())
            break;
        while (!heap_.empty() && !live_.contains(heap_.top().id))
            heap_.pop();
        if (heap_.empty())
            break;
        const Key next = heap_.top();
        if (max_time && next.fire_at_us > max_time->us()) {
            now_ = *max_time;
            break;
        }
        heap_.pop();
        auto node = live_.extract(next.id);
        Slot slot = std::move(node.mapped());
        now_ = SimTime::from_us(next.fire_at_us);
        ++dispatched_;
        const DispatchRecord rec{now_, next.id, slot.target, slot.kind};
        if (log_enabled_)
            log_.push_back(rec);
        if (slot.action)
            slot.action();
        if (hook_)
            hook_(rec);
    }
    return now_;
}

}  // namespace oocsim

#include "oocsim/net_path.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oocsim {

namespace {

std::string qlen_detail(std::size_t q)
{
    return "qlen=" + std::to_string(q);
}

}  // namespace

NetPath::NetPath(Engine& engine, LinkConfig link, RouterConfig router, LossPlan loss,
                 CrossTrafficConfig cross, std::uint64_t seed, Trace* trace)
    : engine_(engine),
      link_(link),
      router_(router),
      loss_(std::move(loss)),
      cross_(cross),
      data_loss_rng_(seed, 1),
      ack_loss_rng_(seed, 2),
      cross_rng_(seed, 3),
      trace_(trace)
{
    if (router_.capacity == 0)
        throw SimulationError("router capacity must be positive");
}

ForwardOutcome NetPath::send_forward(const Packet& pkt)
{
    if (pkt.kind != PacketKind::Data)
        throw SimulationError("send_forward: not a data packet");
    const SimTime now = engine_.now();
    ++counters_.data_sent;

    if (auto it = loss_.forced_drops.find({pkt.seq, pkt.attempt}); it != loss_.forced_drops.end()) {
        loss_.forced_drops.erase(it);
        ++counters_.forced_drops;
        if (trace_)
            trace_->add(now, TraceNode::Rtr, "drop-forced", pkt.seq, pkt.attempt);
        return ForwardOutcome::DroppedForced;
    }
    if (data_loss_rng_.bernoulli(loss_.bernoulli_p)) {
        ++counters_.random_drops;
        if (trace_)
            trace_->add(now, TraceNode::Rtr, "drop-random", pkt.seq, pkt.attempt);
        return ForwardOutcome::DroppedRandom;
    }
    ++counters_.data_in_flight;
    engine_.schedule_after(link_.forward_prop_delay, NodeId::Router, EventKind::PacketArrival,
                           [this, pkt] { arrive_at_router(pkt); });
    return ForwardOutcome::Accepted;
}

ReverseOutcome NetPath::send_reverse(const Packet& ack)
{
    if (ack.kind != PacketKind::Ack)
        throw SimulationError("send_reverse: not an ack");
    ++counters_.acks_sent;
    if (!link_.ack_lossless && ack_loss_rng_.bernoulli(loss_.bernoulli_p)) {
        ++counters_.acks_dropped;
        if (trace_)
            trace_->add(engine_.now(), TraceNode::Snk, "ack-lost", ack.seq, 0);
        return ReverseOutcome::DroppedRandom;
    }
    ++counters_.acks_in_flight;
    engine_.schedule_after(link_.reverse_prop_delay, NodeId::Source, EventKind::PacketArrival,
                           [this, ack] {
                               --counters_.acks_in_flight;
                               ++counters_.acks_delivered;
                               if (to_source_)
                                   to_source_(ack);
                           });
    return ReverseOutcome::Accepted;
}

void NetPath::arrive_at_router(const Packet& pkt)
{
    const bool cross = pkt.flow == Flow::Cross;
    if (cross)
        ++counters_.cross_arrivals;

    if (queue_.size() >= router_.capacity) {
        if (cross) {
            ++counters_.cross_overflow;
        } else {
            --counters_.data_in_flight;
            ++counters_.overflow_drops;
        }
        if (trace_)
            trace_->add(engine_.now(), TraceNode::Rtr, cross ? "cross-drop-overflow" : "drop-overflow",
                        pkt.seq, pkt.attempt, qlen_detail(queue_.size()));
        return;
    }
    queue_.push_back(pkt);
    counters_.peak_queue = std::max(counters_.peak_queue, queue_.size());
    if (trace_)
        trace_->add(engine_.now(), TraceNode::Rtr, cross ? "cross-enqueue" : "enqueue", pkt.seq,
                    pkt.attempt, qlen_detail(queue_.size()));
    if (!busy_)
        router_dequeue_next();
}

Packet NetPath::router_dequeue_next()
{
    if (queue_.empty() || busy_)
        throw SimulationError("router_dequeue_next: queue empty or server busy");
    Packet head = queue_.front();
    queue_.pop_front();
    busy_ = true;
    engine_.schedule_after(router_.service_time, NodeId::Router, EventKind::PacketArrival,
                           [this, head] { complete_service(head); });
    return head;
}

void NetPath::complete_service(const Packet& pkt)
{
    busy_ = false;
    const bool cross = pkt.flow == Flow::Cross;
    if (trace_)
        trace_->add(engine_.now(), TraceNode::Rtr, cross ? "cross-depart" : "depart", pkt.seq,
                    pkt.attempt, qlen_detail(queue_.size()));
    if (cross) {
        ++counters_.cross_served;
    } else {
        engine_.schedule_after(link_.delivery_delay, NodeId::Sink, EventKind::PacketArrival,
                               [this, pkt] {
                                   --counters_.data_in_flight;
                                   ++counters_.sink_arrivals;
                                   if (to_sink_)
                                       to_sink_(pkt);
                               });
    }
    if (!queue_.empty())
        router_dequeue_next();
}

void NetPath::start_cross_traffic()
{
    if (cross_.mean_interarrival.us() > 0)
        schedule_cross_arrival();
}

void NetPath::schedule_cross_arrival()
{
    const double gap_us = cross_rng_.exponential(static_cast<double>(cross_.mean_interarrival.us()));
    const auto gap = SimTime::from_us(static_cast<std::int64_t>(std::llround(gap_us)));
    engine_.schedule_after(gap, NodeId::CrossTraffic, EventKind::PacketArrival, [this] {
        Packet p;
        p.flow = Flow::Cross;
        p.seq = static_cast<Seq>(cross_next_id_++);
        p.created_at = p.first_sent_at = p.this_sent_at = engine_.now();
        arrive_at_router(p);
        schedule_cross_arrival();
    });
}

}  // namespace oocsim

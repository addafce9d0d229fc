#include "oocsim/source.hpp"

#include <string>

namespace oocsim {

const char* to_string(SourceMode m)
{
    return m == SourceMode::Optimistic ? "optimistic" : "pessimistic";
}

namespace {

std::string estimator_detail(const RttEstimator& e)
{
    return "srtt=" + std::to_string(e.srtt_ms()) + ";rto=" + std::to_string(e.rto_ms());
}

}  // namespace

Source::Source(Engine& engine, SourceConfig config, Transmit transmit, Trace* trace)
    : engine_(engine),
      config_(config),
      transmit_(std::move(transmit)),
      trace_(trace),
      estimator_(config.timer),
      transmit_counts_(static_cast<std::size_t>(config.total_packets) + 1, 0)
{
    if (config_.window == 0)
        throw SimulationError("window must be positive");
    if (config_.total_packets <= 0)
        throw SimulationError("total_packets must be positive");
}

void Source::start()
{
    start_time_ = engine_.now();
    try_send_new();
}

SimTime Source::available_at(Seq seq) const
{
    return start_time_ + config_.send_interval * (seq - 1);
}

std::vector<Seq> Source::try_send_new()
{
    std::vector<Seq> sent;
    const SimTime now = engine_.now();
    while (unacked_.size() < config_.window && next_new_seq_ <= config_.total_packets) {
        const SimTime ready = available_at(next_new_seq_);
        if (ready > now) {
            if (!engine_.is_pending(send_opportunity_)) {
                send_opportunity_ = engine_.schedule(ready, NodeId::Source, EventKind::SendOpportunity,
                                                     [this] { try_send_new(); });
            }
            break;
        }
        const Seq seq = next_new_seq_++;
        auto& out = unacked_[seq];
        out.first_sent = now;
        transmit(seq, out);
        sent.push_back(seq);
    }
    return sent;
}

void Source::transmit(Seq seq, Outstanding& out)
{
    const SimTime now = engine_.now();
    ++out.attempts;
    ++transmissions_;
    ++transmit_counts_[static_cast<std::size_t>(seq)];
    if (out.attempts > 1)
        ++retransmissions_;

    Packet pkt;
    pkt.kind = PacketKind::Data;
    pkt.seq = seq;
    pkt.attempt = out.attempts;
    pkt.created_at = available_at(seq);
    pkt.first_sent_at = out.first_sent;
    pkt.this_sent_at = now;

    if (trace_)
        trace_->add(now, TraceNode::Src, out.attempts == 1 ? "send" : "retransmit", seq, out.attempts);
    arm_timer(seq, out);
    if (transmit_)
        transmit_(pkt);
}

void Source::arm_timer(Seq seq, Outstanding& out)
{
    engine_.cancel(out.timer);
    const SimTime rto = estimator_.rto();
    out.timer = engine_.schedule_after(rto, NodeId::Source, EventKind::TimerExpiry,
                                       [this, seq] { on_timer_fired(seq); });
    if (trace_)
        trace_->add(engine_.now(), TraceNode::Src, "timer-set", seq, out.attempts,
                    "expires=" + (engine_.now() + rto).to_string());
}

void Source::on_timer_fired(Seq seq)
{
    if (auto it = unacked_.find(seq); it != unacked_.end())
        it->second.timer = EventHandle{};
    on_timer_expiry(seq);
}

std::vector<Seq> Source::on_timer_expiry(Seq seq)
{
    auto it = unacked_.find(seq);
    if (it == unacked_.end())
        return {};

    const SimTime now = engine_.now();
    if (transmissions_at_expiry_.empty())
        transmissions_at_expiry_.push_back(transmissions_);
    ++timeout_events_;
    rto_at_expiry_.push_back(estimator_.rto_ms());
    expiry_times_.push_back(now);
    if (trace_)
        trace_->add(now, TraceNode::Src, "timer-fired", seq, it->second.attempts, estimator_detail(estimator_));

    if (config_.timer.exponential_backoff)
        estimator_.backoff();

    std::vector<Seq> resent;
    if (config_.mode == SourceMode::Optimistic) {
        transmit(seq, it->second);
        resent.push_back(seq);
    } else {
        for (auto& [s, out] : unacked_) {
            transmit(s, out);
            resent.push_back(s);
        }
    }
    transmissions_at_expiry_.push_back(transmissions_);
    return resent;
}

std::vector<Seq> Source::on_ack(Seq ack_num)
{
    const SimTime now = engine_.now();
    if (ack_num >= next_new_seq_) {
        throw SimulationError("ack " + std::to_string(ack_num) + " covers unsent data (next_new_seq=" +
                              std::to_string(next_new_seq_) + ")");
    }
    if (ack_num <= last_acked_) {
        if (trace_)
            trace_->add(now, TraceNode::Src, "dup-ack", ack_num, 0);
        return {};
    }
    if (trace_)
        trace_->add(now, TraceNode::Src, "ack-received", ack_num, 0);

    std::vector<Seq> newly;
    auto end = unacked_.upper_bound(ack_num);
    for (auto it = unacked_.begin(); it != end; ++it) {
        engine_.cancel(it->second.timer);
        // Sampled from the first transmission even for retransmitted packets.
        // A zero sample is only possible on a zero-delay path and is skipped.
        const SimTime sample = now - it->second.first_sent;
        if (sample.us() > 0)
            estimator_.update(sample);
        newly.push_back(it->first);
    }
    unacked_.erase(unacked_.begin(), end);
    last_acked_ = ack_num;
    ack_progress_times_.push_back(now);
    if (trace_)
        trace_->add(now, TraceNode::Src, "rtt-update", ack_num, 0, estimator_detail(estimator_));

    try_send_new();
    return newly;
}

std::vector<Seq> Source::unacked() const
{
    std::vector<Seq> out;
    out.reserve(unacked_.size());
    for (const auto& [s, _] : unacked_)
        out.push_back(s);
    return out;
}

bool Source::has_live_timer(Seq seq) const
{
    auto it = unacked_.find(seq);
    return it != unacked_.end() && engine_.is_pending(it->second.timer);
}

std::uint32_t Source::transmit_count(Seq seq) const
{
    if (seq < 1 || seq > config_.total_packets)
        return 0;
    return transmit_counts_[static_cast<std::size_t>(seq)];
}

}  // namespace oocsim

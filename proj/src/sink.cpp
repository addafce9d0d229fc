#include "oocsim/sink.hpp"

#include <algorithm>

#include "oocsim/engine.hpp"

namespace oocsim {

const char* to_string(SinkMode m)
{
    return m == SinkMode::Caching ? "caching" : "non_caching";
}

const char* to_string(Disposition d)
{
    switch (d) {
    case Disposition::Delivered: return "delivered";
    case Disposition::Cached: return "cached";
    case Disposition::DroppedOutOfOrder: return "dropped_out_of_order";
    case Disposition::DroppedDuplicate: return "dropped_duplicate";
    case Disposition::DroppedCacheFull: return "dropped_cache_full";
    }
    return "?";
}

std::vector<Seq> deliverable_run(Seq expected, const std::set<Seq>& cache)
{
    std::vector<Seq> run{expected};
    for (auto it = cache.upper_bound(expected); it != cache.end() && *it == run.back() + 1; ++it)
        run.push_back(*it);
    return run;
}

Sink::Sink(SinkPolicy policy) : policy_(policy)
{
    if (policy_.cache_capacity && *policy_.cache_capacity == 0)
        throw SimulationError("cache capacity must be positive");
}

DataResult Sink::on_data(const Packet& pkt)
{
    if (pkt.kind != PacketKind::Data)
        throw SimulationError("sink received a non-data packet");
    ++arrivals_;
    DataResult result;

    if (pkt.seq < expected_) {
        ++duplicates_;
        result.disposition = Disposition::DroppedDuplicate;
    } else if (pkt.seq == expected_) {
        result.delivered_now = deliverable_run(expected_, cache_);
        for (Seq s : result.delivered_now) {
            cache_.erase(s);
            delivered_.push_back(s);
        }
        expected_ = result.delivered_now.back() + 1;
        result.disposition = Disposition::Delivered;
    } else if (policy_.mode == SinkMode::NonCaching) {
        ++out_of_order_drops_;
        result.disposition = Disposition::DroppedOutOfOrder;
    } else if (cache_.contains(pkt.seq)) {
        ++duplicates_;
        result.disposition = Disposition::DroppedDuplicate;
    } else if (policy_.cache_capacity && cache_.size() >= *policy_.cache_capacity) {
        ++cache_full_drops_;
        result.disposition = Disposition::DroppedCacheFull;
    } else {
        cache_.insert(pkt.seq);
        ++cached_total_;
        peak_cache_ = std::max(peak_cache_, cache_.size());
        result.disposition = Disposition::Cached;
    }
    result.ack_num = expected_ - 1;
    return result;
}

}  // namespace oocsim

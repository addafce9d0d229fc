#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "oocsim/packet.hpp"

namespace oocsim {

enum class SinkMode : std::uint8_t { Caching, NonCaching };

const char* to_string(SinkMode m);

struct SinkPolicy {
    SinkMode mode = SinkMode::Caching;
    // Unlimited when empty.
    std::optional<std::size_t> cache_capacity;
};

enum class Disposition : std::uint8_t {
    Delivered,
    Cached,
    DroppedOutOfOrder,
    DroppedDuplicate,
    DroppedCacheFull,
};

const char* to_string(Disposition d);

struct DataResult {
    std::vector<Seq> delivered_now;
    // Cumulative: every seq up to and including ack_num has been delivered.
    Seq ack_num = 0;
    Disposition disposition = Disposition::Delivered;
};

// The in-order run starting at `expected`, which has just arrived, extended
// through consecutive cached sequence numbers.
std::vector<Seq> deliverable_run(Seq expected, const std::set<Seq>& cache);

// Receiving endpoint. Every data arrival produces exactly one cumulative ack.
class Sink {
public:
    explicit Sink(SinkPolicy policy = {});

    DataResult on_data(const Packet& pkt);

    const SinkPolicy& policy() const { return policy_; }
    Seq expected() const { return expected_; }
    const std::set<Seq>& cache() const { return cache_; }
    const std::vector<Seq>& delivered() const { return delivered_; }
    std::size_t delivered_count() const { return delivered_.size(); }

    std::uint64_t arrivals() const { return arrivals_; }
    std::uint64_t duplicates() const { return duplicates_; }
    std::uint64_t out_of_order_drops() const { return out_of_order_drops_; }
    std::uint64_t cache_full_drops() const { return cache_full_drops_; }
    std::uint64_t cached_total() const { return cached_total_; }
    std::size_t peak_cache() const { return peak_cache_; }

private:
    SinkPolicy policy_;
    Seq expected_ = 1;
    std::set<Seq> cache_;
    std::vector<Seq> delivered_;

    std::uint64_t arrivals_ = 0;
    std::uint64_t duplicates_ = 0;
    std::uint64_t out_of_order_drops_ = 0;
    std::uint64_t cache_full_drops_ = 0;
    std::uint64_t cached_total_ = 0;
    std::size_t peak_cache_ = 0;
};

}  // namespace oocsim

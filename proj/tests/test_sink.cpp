#include <doctest.h>

#include <vector>

#include "oocsim/engine.hpp"
#include "oocsim/sink.hpp"

using namespace oocsim;

namespace {

Packet data(Seq seq, std::uint32_t attempt = 1)
{
    Packet p;
    p.seq = seq;
    p.attempt = attempt;
    return p;
}

using Seqs = std::vector<Seq>;

}  // namespace

TEST_CASE("non-caching sink discards out-of-order arrivals")
{
    Sink s(SinkPolicy{SinkMode::NonCaching, {}});
    for (Seq q : {2, 3, 4}) {
        const auto r = s.on_data(data(q));
        CHECK(r.disposition == Disposition::DroppedOutOfOrder);
        CHECK(r.ack_num == 0);
        CHECK(r.delivered_now.empty());
        CHECK(s.cache().empty());
    }
    const auto r = s.on_data(data(1, 2));
    CHECK(r.delivered_now == Seqs{1});
    CHECK(r.ack_num == 1);
    CHECK(s.out_of_order_drops() == 3);
}

TEST_CASE("caching sink releases the run when the gap fills")
{
    Sink s(SinkPolicy{SinkMode::Caching, {}});
    for (Seq q : {2, 3, 4})
        CHECK(s.on_data(data(q)).disposition == Disposition::Cached);
    CHECK(s.peak_cache() == 3);
    const auto r = s.on_data(data(1, 2));
    CHECK(r.disposition == Disposition::Delivered);
    CHECK(r.delivered_now == Seqs{1, 2, 3, 4});
    CHECK(r.ack_num == 4);
    CHECK(s.cache().empty());
    CHECK(s.expected() == 5);
}

TEST_CASE("late duplicates are dropped and acked")
{
    Sink s;
    for (Seq q = 1; q <= 4; ++q)
        s.on_data(data(q));
    const auto r = s.on_data(data(1, 2));
    CHECK(r.disposition == Disposition::DroppedDuplicate);
    CHECK(r.ack_num == 4);
    CHECK(s.duplicates() == 1);
}

TEST_CASE("duplicate of a cached packet")
{
    Sink s;
    s.on_data(data(3));
    const auto r = s.on_data(data(3, 2));
    CHECK(r.disposition == Disposition::DroppedDuplicate);
    CHECK(r.ack_num == 0);
    CHECK(s.cache().size() == 1);
}

TEST_CASE("bounded cache drops arrivals without evicting")
{
    Sink s(SinkPolicy{SinkMode::Caching, 2});
    CHECK(s.on_data(data(2)).disposition == Disposition::Cached);
    CHECK(s.on_data(data(4)).disposition == Disposition::Cached);
    CHECK(s.on_data(data(3)).disposition == Disposition::DroppedCacheFull);
    CHECK(s.cache() == std::set<Seq>{2, 4});
    const auto r = s.on_data(data(1));
    CHECK(r.delivered_now == Seqs{1, 2});
    CHECK(r.ack_num == 2);
    CHECK(s.cache_full_drops() == 1);
}

TEST_CASE("deliverable_run")
{
    CHECK(deliverable_run(1, {2, 3, 4}) == Seqs{1, 2, 3, 4});
    CHECK(deliverable_run(1, {3, 4}) == Seqs{1});
    CHECK(deliverable_run(7, {}) == Seqs{7});
}

TEST_CASE("every arrival yields a truthful cumulative ack")
{
    Sink s;
    const Seqs arrivals{3, 1, 5, 2, 2, 4, 7, 6, 1, 8};
    for (Seq q : arrivals) {
        const auto r = s.on_data(data(q));
        CHECK(r.ack_num == s.expected() - 1);
        CHECK(static_cast<std::size_t>(r.ack_num) == s.delivered_count());
    }
    CHECK(s.delivered() == Seqs{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(s.arrivals() == arrivals.size());
}

TEST_CASE("sink rejects acks and a zero cache")
{
    Sink s;
    Packet a;
    a.kind = PacketKind::Ack;
    CHECK_THROWS_AS(s.on_data(a), SimulationError);
    CHECK_THROWS_AS(Sink(SinkPolicy{SinkMode::Caching, 0}), SimulationError);
}

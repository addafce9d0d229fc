#include <doctest.h>

#include <vector>

#include "oocsim/engine.hpp"
#include "oocsim/source.hpp"

using namespace oocsim;

namespace {

SimTime ms(std::int64_t v) { return SimTime::from_ms(v); }

struct Sent {
    SimTime at;
    Seq seq;
    std::uint32_t attempt;
    bool operator==(const Sent&) const = default;
};

struct Harness {
    Engine engine;
    std::vector<Sent> sent;
    Source source;

    explicit Harness(SourceConfig c)
        : source(engine, c, [this](const Packet& p) { sent.push_back({engine.now(), p.seq, p.attempt}); })
    {
    }

    void at(SimTime t, std::function<void()> f)
    {
        engine.schedule(t, NodeId::Harness, EventKind::MeasurementTick, std::move(f));
    }
};

SourceConfig cfg(SourceMode mode, std::size_t window = 4, Seq n = 100)
{
    SourceConfig c;
    c.mode = mode;
    c.window = window;
    c.total_packets = n;
    return c;
}

}  // namespace

TEST_CASE("fresh data fills the window")
{
    Harness h(cfg(SourceMode::Optimistic));
    CHECK(h.source.try_send_new() == std::vector<Seq>{1, 2, 3, 4});
    CHECK(h.source.try_send_new().empty());
    CHECK(h.source.next_new_seq() == 5);
    CHECK(h.source.outstanding() == 4);
    for (Seq s = 1; s <= 4; ++s)
        CHECK(h.source.has_live_timer(s));
}

TEST_CASE("an ack slides the window by what it covers")
{
    Harness h(cfg(SourceMode::Optimistic));
    h.source.start();
    CHECK(h.source.on_ack(1) == std::vector<Seq>{1});
    CHECK(h.source.unacked() == std::vector<Seq>{2, 3, 4, 5});
    CHECK(h.sent.back() == Sent{SimTime{}, 5, 1});
    CHECK(h.source.has_live_timer(2));
}

TEST_CASE("window of one is stop-and-wait")
{
    Harness h(cfg(SourceMode::Pessimistic, 1, 3));
    CHECK(h.source.try_send_new() == std::vector<Seq>{1});
    CHECK(h.source.try_send_new().empty());
    h.source.on_ack(1);
    CHECK(h.source.unacked() == std::vector<Seq>{2});
}

TEST_CASE("send_interval paces first transmissions")
{
    SourceConfig c = cfg(SourceMode::Optimistic, 4, 3);
    c.send_interval = ms(30);
    Harness h(c);
    h.source.start();
    h.engine.run_until(StopCondition::at_time(ms(100)));
    REQUIRE(h.sent.size() == 3);
    CHECK(h.sent[1].at == ms(30));
    CHECK(h.sent[2].at == ms(60));
}

TEST_CASE("expiry: optimistic resends one, pessimistic resends all")
{
    SUBCASE("optimistic")
    {
        Harness h(cfg(SourceMode::Optimistic));
        h.source.start();
        CHECK(h.source.on_timer_expiry(1) == std::vector<Seq>{1});
        CHECK(h.source.transmit_count(1) == 2);
        CHECK(h.source.transmit_count(2) == 1);
    }
    SUBCASE("pessimistic")
    {
        Harness h(cfg(SourceMode::Pessimistic));
        h.source.start();
        CHECK(h.source.on_timer_expiry(1) == std::vector<Seq>{1, 2, 3, 4});
        CHECK(h.source.retransmissions() == 4);
        CHECK(h.sent.back() == Sent{SimTime{}, 4, 2});
    }
}

TEST_CASE("stale expiry is a no-op")
{
    Harness h(cfg(SourceMode::Pessimistic));
    h.source.start();
    h.source.on_ack(4);
    const auto before = h.sent.size();
    CHECK(h.source.on_timer_expiry(1).empty());
    CHECK(h.sent.size() == before);
    CHECK(h.source.timeout_events() == 0);
}

TEST_CASE("cumulative acks")
{
    Harness h(cfg(SourceMode::Optimistic, 4, 4));
    h.source.start();
    CHECK(h.source.on_ack(0).empty());
    CHECK(h.source.last_acked() == 0);
    CHECK(h.source.on_ack(1) == std::vector<Seq>{1});
    CHECK(h.source.has_live_timer(2));
    CHECK(h.source.on_ack(4) == std::vector<Seq>{2, 3, 4});
    CHECK(h.source.finished());
    CHECK(h.source.on_ack(2).empty());
    CHECK(h.source.last_acked() == 4);
}

TEST_CASE("acking unsent data is a protocol violation")
{
    Harness h(cfg(SourceMode::Optimistic));
    h.source.start();
    CHECK_THROWS_AS(h.source.on_ack(5), SimulationError);
}

TEST_CASE("timers fire at rto and samples run from the first send")
{
    SourceConfig c = cfg(SourceMode::Optimistic, 1, 1);
    c.timer.initial_srtt = ms(100);
    Harness h(c);
    h.source.start();
    // rto = 200: the timer fires at 200 and again at 400.
    h.at(ms(450), [&] { h.source.on_ack(1); });
    h.engine.run_until(StopCondition::queue_empty());
    REQUIRE(h.sent.size() == 3);
    CHECK(h.sent[1] == Sent{ms(200), 1, 2});
    CHECK(h.sent[2] == Sent{ms(400), 1, 3});
    CHECK(h.source.expiry_times() == std::vector<SimTime>{ms(200), ms(400)});
    CHECK(h.source.rto_at_expiry() == std::vector<double>{200.0, 200.0});
    // Sample 450 ms from the first copy, not 50 ms from the last one.
    CHECK(h.source.srtt_ms() == doctest::Approx(0.875 * 100 + 0.125 * 450));
}

TEST_CASE("pessimistic expiry re-arms every timer")
{
    SourceConfig c = cfg(SourceMode::Pessimistic, 3, 3);
    c.send_interval = ms(10);
    Harness h(c);
    h.source.start();
    h.engine.run_until(StopCondition::at_time(ms(350)));
    // 1 fires at 200 and resends 1..3; everything re-armed to 400.
    REQUIRE(h.source.expiry_times().size() == 1);
    CHECK(h.source.expiry_times()[0] == ms(200));
    CHECK(h.sent.size() == 6);
    h.engine.run_until(StopCondition::at_time(ms(401)));
    CHECK(h.source.timeout_events() == 2);
    CHECK(h.sent.size() == 9);
}

TEST_CASE("transmissions obey the policy count identity")
{
    for (SourceMode mode : {SourceMode::Optimistic, SourceMode::Pessimistic}) {
        Harness h(cfg(mode, 4, 6));
        h.source.start();
        std::uint64_t expect = 4;
        for (Seq s : {2, 1, 3}) {
            const auto outstanding = h.source.outstanding();
            h.source.on_timer_expiry(s);
            expect += mode == SourceMode::Optimistic ? 1 : outstanding;
        }
        CHECK(h.source.transmissions() == expect);
        CHECK(h.source.transmissions() == 4 + h.source.retransmissions());
    }
}

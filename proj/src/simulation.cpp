#include "oocsim/simulation.hpp"

#include <fstream>
#include <future>
#include <string>

#include "oocsim/engine.hpp"
#include "oocsim/source.hpp"

namespace oocsim {

namespace {

[[noreturn]] void violated(const Engine& engine, const std::string& what)
{
    throw SimulationError("invariant violated at " + engine.now().to_string() + " ms: " + what);
}

// Wires source, path and sink onto one engine.
class Run {
public:
    explicit Run(const ScenarioConfig& config)
        : config_(config),
          result_(fresh_result(config.record_trace || !config.trace_out.empty())),
          path_(engine_, config.link, config.router, config.loss,
                CrossTrafficConfig{config.cross_interarrival}, config.seed, trace_ptr()),
          sink_(SinkPolicy{config.sink_mode, config.cache_capacity}),
          source_(engine_,
                  SourceConfig{config.source_mode, config.window, config.packets, config.send_interval,
                               config.timer},
                  [this](const Packet& p) { path_.send_forward(p); }, trace_ptr())
    {
        path_.set_sink_handler([this](const Packet& p) { on_sink_data(p); });
        path_.set_source_handler([this](const Packet& ack) { source_.on_ack(ack.seq); });
        if (config_.check_invariants)
            engine_.set_dispatch_hook([this](const DispatchRecord&) { check_invariants(); });
    }

    RunResult execute()
    {
        result_.initial_rto_ms = source_.rto_ms();
        path_.start_cross_traffic();
        source_.start();

        StopCondition stop = StopCondition::at_time(config_.max_time);
        if (config_.stop == StopKind::Delivered) {
            const auto n = static_cast<std::size_t>(config_.packets);
            stop = StopCondition::when([this, n] { return sink_.delivered_count() >= n; }, config_.max_time);
        } else if (config_.stop == StopKind::QueueEmpty) {
            stop = StopCondition::when({}, config_.max_time);
        }
        const SimTime end = engine_.run_until(stop);
        if (config_.check_invariants)
            check_event_accounting();
        collect(end);
        return std::move(result_);
    }

private:
    static RunResult fresh_result(bool record_trace)
    {
        RunResult r;
        r.trace = Trace(record_trace);
        return r;
    }

    Trace* trace_ptr() { return &result_.trace; }

    void on_sink_data(const Packet& pkt)
    {
        const SimTime now = engine_.now();
        DataResult r = sink_.on_data(pkt);
        result_.sink_arrivals.push_back({now, pkt.seq, pkt.attempt, r.disposition});
        for (Seq s : r.delivered_now) {
            result_.delivery_times.push_back(now);
            if (result_.trace.enabled())
                result_.trace.add(now, TraceNode::Snk, "deliver", s, 0);
        }
        if (result_.trace.enabled()) {
            result_.trace.add(now, TraceNode::Snk, "arrival", pkt.seq, pkt.attempt,
                              std::string(to_string(r.disposition)) +
                                  ";cache=" + std::to_string(sink_.cache().size()));
            result_.trace.add(now, TraceNode::Snk, "ack-sent", r.ack_num, 0);
        }
        if (config_.check_invariants && r.ack_num != static_cast<Seq>(sink_.delivered_count()))
            violated(engine_, "ack " + std::to_string(r.ack_num) + " disagrees with delivered count");

        Packet ack;
        ack.kind = PacketKind::Ack;
        ack.seq = r.ack_num;
        ack.created_at = ack.first_sent_at = ack.this_sent_at = now;
        path_.send_reverse(ack);
    }

    void check_invariants()
    {
        ++result_.invariant_checks;
        // Window safety and timer bookkeeping.
        if (source_.outstanding() > config_.window)
            violated(engine_, "window exceeded");
        const auto unacked = source_.unacked();
        for (Seq s : unacked) {
            if (!source_.has_live_timer(s))
                violated(engine_, "seq " + std::to_string(s) + " has no live timer");
        }
        if (!unacked.empty() && source_.last_acked() >= unacked.front())
            violated(engine_, "last_acked not below unacked");
        if (source_.last_acked() < last_acked_seen_)
            violated(engine_, "cumulative ack went backwards");
        last_acked_seen_ = source_.last_acked();
        if (!(source_.srtt_ms() > 0.0))
            violated(engine_, "srtt not positive");
        const auto& tp = config_.timer;
        if (source_.rto_ms() < tp.rto_min.ms() || source_.rto_ms() > tp.rto_max.ms())
            violated(engine_, "rto outside bounds");

        // Path conservation.
        const auto& pc = path_.counters();
        if (pc.data_sent != pc.sink_arrivals + pc.forced_drops + pc.random_drops + pc.overflow_drops +
                                pc.data_in_flight)
            violated(engine_, "data packet conservation");
        if (pc.data_sent != source_.transmissions())
            violated(engine_, "source transmissions differ from path injections");
        if (path_.queue_length() > config_.router.capacity)
            violated(engine_, "router queue above capacity");
        const auto first_sends = static_cast<std::uint64_t>(source_.next_new_seq() - 1);
        if (source_.transmissions() != first_sends + source_.retransmissions())
            violated(engine_, "transmissions != first sends + retransmissions");

        // Sink delivery and cache.
        const auto& delivered = sink_.delivered();
        for (; verified_prefix_ < delivered.size(); ++verified_prefix_) {
            if (delivered[verified_prefix_] != static_cast<Seq>(verified_prefix_ + 1))
                violated(engine_, "delivery out of order or repeated");
        }
        if (sink_.expected() != static_cast<Seq>(delivered.size()) + 1)
            violated(engine_, "expected does not follow delivered log");
        const auto& cache = sink_.cache();
        if (config_.sink_mode == SinkMode::NonCaching && !cache.empty())
            violated(engine_, "non-caching sink holds packets");
        if (config_.cache_capacity && cache.size() > *config_.cache_capacity)
            violated(engine_, "cache above capacity");
        if (!cache.empty() && *cache.begin() <= sink_.expected())
            violated(engine_, "cache holds a deliverable packet");
    }

    void check_event_accounting()
    {
        if (engine_.scheduled_count() !=
            engine_.dispatched_count() + engine_.cancelled_count() + engine_.pending())
            violated(engine_, "event accounting");
    }

    void collect(SimTime end)
    {
        Metrics& m = result_.metrics;
        const auto& pc = path_.counters();
        m.scheme = std::string(to_string(config_.scheme()));
        m.seed = config_.seed;
        m.sim_duration = end;
        m.delivered = sink_.delivered_count();
        m.data_transmissions_total = source_.transmissions();
        m.retransmissions = source_.retransmissions();
        m.timeout_events = source_.timeout_events();
        m.duplicates_at_sink = sink_.duplicates();
        m.out_of_order_drops = sink_.out_of_order_drops();
        m.overflow_drops = pc.overflow_drops;
        m.forced_drops = pc.forced_drops;
        m.random_drops = pc.random_drops;
        m.cache_full_drops = sink_.cache_full_drops();
        m.final_srtt_ms = source_.srtt_ms();
        m.final_rto_ms = source_.rto_ms();
        m.peak_cache_occupancy = sink_.peak_cache();

        const auto& counts = source_.transmit_counts();
        const auto sent = static_cast<std::size_t>(source_.next_new_seq() - 1);
        m.transmit_counts.assign(counts.begin() + 1, counts.begin() + 1 + static_cast<std::ptrdiff_t>(sent));

        const double dur_s = end.ms() / 1000.0;
        if (dur_s > 0) {
            const SimTime mid = SimTime::from_us(end.us() / 2);
            std::uint64_t first = 0;
            for (SimTime t : result_.delivery_times)
                first += t < mid ? 1 : 0;
            const double half_s = dur_s / 2.0;
            m.goodput = static_cast<double>(m.delivered) / dur_s;
            m.goodput_first_half = static_cast<double>(first) / half_s;
            m.goodput_second_half = static_cast<double>(m.delivered - first) / half_s;
        }

        result_.completed = m.delivered == static_cast<std::uint64_t>(config_.packets);
        result_.delivered = sink_.delivered();
        result_.rto_at_expiry = source_.rto_at_expiry();
        result_.expiry_times = source_.expiry_times();
        result_.transmissions_at_expiry = source_.transmissions_at_expiry();
        result_.ack_progress_times = source_.ack_progress_times();
        result_.path = pc;
        result_.events_scheduled = engine_.scheduled_count();
        result_.events_dispatched = engine_.dispatched_count();
        result_.events_cancelled = engine_.cancelled_count();
        result_.events_pending = engine_.pending();
    }

    ScenarioConfig config_;
    RunResult result_;
    Engine engine_;
    NetPath path_;
    Sink sink_;
    Source source_;

    Seq last_acked_seen_ = 0;
    std::size_t verified_prefix_ = 0;
};

}  // namespace

RunResult simulate(const ScenarioConfig& config)
{
    config.validate();
    Run run(config);
    return run.execute();
}

Metrics run_scenario(const ScenarioConfig& config)
{
    RunResult r = simulate(config);
    const std::string label(to_string(config.scheme()));
    if (!config.metrics_out.empty()) {
        std::ofstream out(config.metrics_out, std::ios::binary);
        if (!out)
            throw ConfigError("metrics_out", "cannot write '" + config.metrics_out + "'");
        write_metrics_csv(out, {r.metrics});
    }
    if (!config.trace_out.empty()) {
        std::ofstream out(config.trace_out, std::ios::binary);
        if (!out)
            throw ConfigError("trace_out", "cannot write '" + config.trace_out + "'");
        r.trace.write_csv(out, label);
    }
    return r.metrics;
}

std::vector<Metrics> compare_schemes(const ScenarioConfig& base, const std::string& out_csv)
{
    base.validate();
    std::vector<std::future<Metrics>> jobs;
    for (Scheme s : kAllSchemes) {
        ScenarioConfig c = base;
        c.set_scheme(s);
        c.metrics_out.clear();
        c.trace_out.clear();
        jobs.push_back(std::async(std::launch::async, [c] { return simulate(c).metrics; }));
    }
    std::vector<Metrics> rows;
    for (auto& j : jobs)
        rows.push_back(j.get());
    if (!out_csv.empty()) {
        std::ofstream out(out_csv, std::ios::binary);
        if (!out)
            throw ConfigError("out", "cannot write '" + out_csv + "'");
        write_metrics_csv(out, rows);
    }
    return rows;
}

}  // namespace oocsim

// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oocsim/rng.hpp"
#include "oocsim/rtt_estimator.hpp"
#include "oocsim/simulation.hpp"

using namespace oocsim;

namespace {

// Pinned thresholds.
constexpr double kFigure1MaxSeconds = 1.0;
constexpr std::size_t kFigure1MaxDelivered = 200;
constexpr double kFigure1RtoGrowth = 10.0;
constexpr double kFigure1Collapse = 0.8;
constexpr double kInjectionMaxSeconds = 1.0;
constexpr std::size_t kCongestionSeeds = 20;
constexpr std::size_t kCongestionMinWins = 18;
constexpr double kCongestionMaxSeconds = 30.0;
constexpr double kLightLoadMaxSeconds = 5.0;
constexpr std::uint64_t kPropertySeeds = 200;
constexpr Seq kPropertyPackets = 200;
constexpr double kPropertyMaxSeconds = 60.0;
constexpr int kRecurrenceSteps = 50;
constexpr double kRecurrenceTolerance = 1e-9;

struct Outcome {
    bool passed = false;
    std::string detail;
};

template <typename... Args>
std::string cat(const Args&... args)
{
    std::ostringstream out;
    (out << ... << args);
    return out.str();
}

int failures = 0;

void criterion(int id, const char* name, double max_seconds, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, cat("exception: ", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (max_seconds > 0 && secs >= max_seconds) {
        o.passed = false;
        o.detail += cat("; over the ", max_seconds, " s budget");
    }
    failures += !o.passed;
    std::printf("%s criterion %d: %s [%s] (%.2f s)\n", o.passed ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
}

Outcome figure1()
{
    const RunResult r = simulate(scenario_figure1());
    const Metrics& m = r.metrics;
    std::string failed;

    // (a) Sink arrivals of 2, 3, 4 marked out-of-order before copy 2 of 1.
    std::size_t i = 0;
    std::vector<Seq> dropped_before;
    for (; i < r.sink_arrivals.size(); ++i) {
        const SinkArrival& a = r.sink_arrivals[i];
        if (a.seq == 1)
            break;
        if (a.disposition == Disposition::DroppedOutOfOrder)
            dropped_before.push_back(a.seq);
    }
    if (!(i < r.sink_arrivals.size() && r.sink_arrivals[i].attempt == 2 &&
          dropped_before == std::vector<Seq>{2, 3, 4}))
        failed += " (a)";

    // (b) Every delivered packet went out exactly twice.
    bool b_ok = !r.delivered.empty() && r.delivered.size() <= kFigure1MaxDelivered;
    for (Seq s : r.delivered)
        b_ok = b_ok && m.transmit_counts.at(static_cast<std::size_t>(s - 1)) == 2;
    if (!b_ok)
        failed += " (b)";

    // (c) rto strictly rises from one timeout to the next.
    bool c_ok = r.rto_at_expiry.size() >= 2;
    for (std::size_t k = 1; k < r.rto_at_expiry.size(); ++k)
        c_ok = c_ok && r.rto_at_expiry[k] > r.rto_at_expiry[k - 1];
    const double growth = m.final_rto_ms / r.initial_rto_ms;
    if (!(c_ok && growth > kFigure1RtoGrowth))
        failed += " (c)";

    // (d) Throughput collapse.
    if (!(m.goodput_second_half < kFigure1Collapse * m.goodput_first_half))
        failed += " (d)";

    return {failed.empty(), cat(r.delivered.size(), " delivered, ", r.rto_at_expiry.size(), " timeouts, rto x",
                                growth, ", goodput halves ", m.goodput_first_half, "/", m.goodput_second_half,
                                " pps", failed.empty() ? "" : "; failed" + failed)};
}

Outcome injections()
{
    std::ostringstream detail;
    bool ok = true;
    for (SourceMode p : {SourceMode::Pessimistic, SourceMode::Optimistic}) {
        for (std::uint64_t c : {1, 4, 8}) {
            for (std::uint64_t n : {0, 1, 3, 5}) {
                ScenarioConfig cfg = scenario_forced_timeouts(c, n, p);
                cfg.record_trace = true;
                const RunResult r = simulate(cfg);
                // Count straight from the trace: source transmissions and
                // expiries strictly before the first ack that advances.
                SimTime progress = SimTime::from_ms(-1);
                for (const TraceRecord& row : r.trace.rows()) {
                    if (row.node == TraceNode::Src && row.event == "ack-received") {
                        progress = row.time;
                        break;
                    }
                }
                std::uint64_t sent = 0;
                std::uint64_t fired = 0;
                for (const TraceRecord& row : r.trace.rows()) {
                    if (row.time >= progress)
                        break;
                    if (row.node != TraceNode::Src)
                        continue;
                    sent += row.event == "send" || row.event == "retransmit";
                    fired += row.event == "timer-fired";
                }
                const std::uint64_t want = p == SourceMode::Pessimistic ? (1 + n) * c : c + n;
                if (progress.us() < 0 || sent != want || fired != n || !r.completed) {
                    ok = false;
                    detail << " " << (p == SourceMode::Pessimistic ? "pess" : "opt") << " C=" << c << " n=" << n
                           << " got " << sent << " want " << want << " expiries " << fired << ";";
                }
            }
        }
    }
    return {ok, ok ? "24/24 cases exact" : detail.str()};
}

Outcome congestion()
{
    std::size_t w12 = 0;
    std::size_t w43 = 0;
    std::size_t inj = 0;
    double sum[4] = {0, 0, 0, 0};
    for (std::uint64_t seed = 1; seed <= kCongestionSeeds; ++seed) {
        const std::vector<Metrics> m = compare_schemes(scenario_congestion(Scheme::Ooc1, seed));
        w12 += m[0].goodput > m[1].goodput;
        w43 += m[3].goodput > m[2].goodput;
        inj += m[1].data_transmissions_total > m[0].data_transmissions_total;
        for (int k = 0; k < 4; ++k)
            sum[k] += m[k].goodput;
    }
    const bool ok = w12 >= kCongestionMinWins && w43 >= kCongestionMinWins && sum[0] > sum[1] &&
                    sum[3] > sum[2] && inj == kCongestionSeeds;
    const double n = kCongestionSeeds;
    return {ok, cat("ooc1>ooc2 ", w12, "/", kCongestionSeeds, ", ooc4>ooc3 ", w43, "/", kCongestionSeeds,
                    ", injections ooc2>ooc1 ", inj, "/", kCongestionSeeds, ", mean goodput ", sum[0] / n, " ",
                    sum[1] / n, " ", sum[2] / n, " ", sum[3] / n, " pps")};
}

Outcome light_load()
{
    const std::vector<Metrics> m = compare_schemes(scenario_light_load());
    const bool ok = m[0].goodput <= m[1].goodput && m[1].goodput <= m[2].goodput &&
                    m[2].goodput <= m[3].goodput && m[3].goodput > m[2].goodput;
    return {ok, cat("goodput ", m[0].goodput, " <= ", m[1].goodput, " <= ", m[2].goodput, " < ", m[3].goodput,
                    " pps")};
}

Outcome properties()
{
    std::uint64_t runs = 0;
    std::uint64_t checks = 0;
    for (std::uint64_t seed = 1; seed <= kPropertySeeds; ++seed) {
        RngStream pick(seed, 99);
        for (double p : {0.0, 0.05, 0.2}) {
            ScenarioConfig base;
            base.packets = kPropertyPackets;
            base.window = 1 + pick.next_u64() % 8;
            base.router.capacity = 2 + pick.next_u64() % 30;
            base.router.service_time = SimTime::from_us(static_cast<std::int64_t>(200 + pick.next_u64() % 3000));
            base.link.forward_prop_delay = SimTime::from_us(static_cast<std::int64_t>(pick.next_u64() % 20'000));
            base.link.reverse_prop_delay = SimTime::from_us(static_cast<std::int64_t>(pick.next_u64() % 20'000));
            base.loss.bernoulli_p = p;
            const auto forced = pick.next_u64() % 4;
            for (std::uint64_t k = 0; k < forced; ++k)
                base.loss.forced_drops.emplace(1 + pick.next_u64() % kPropertyPackets,
                                               static_cast<std::uint32_t>(1 + pick.next_u64() % 2));
            if (pick.bernoulli(0.3))
                base.cache_capacity = 1 + pick.next_u64() % 4;
            base.seed = seed;
            base.check_invariants = true;
            for (Scheme s : kAllSchemes) {
                ScenarioConfig c = base;
                c.set_scheme(s);
                const RunResult r = simulate(c);
                ++runs;
                checks += r.invariant_checks;
                const Metrics& m = r.metrics;
                const PathCounters& pc = r.path;
                bool ok = r.completed && r.delivered.size() == static_cast<std::size_t>(kPropertyPackets);
                for (std::size_t i = 0; ok && i < r.delivered.size(); ++i)
                    ok = r.delivered[i] == static_cast<Seq>(i + 1);
                ok = ok && m.data_transmissions_total ==
                               static_cast<std::uint64_t>(kPropertyPackets) + m.retransmissions;
                ok = ok && pc.data_sent == pc.sink_arrivals + pc.forced_drops + pc.random_drops +
                                               pc.overflow_drops + pc.data_in_flight;
                ok = ok && m.goodput > 0.0;
                ok = ok && (!c.cache_capacity || m.peak_cache_occupancy <= *c.cache_capacity);
                ok = ok && r.invariant_checks == r.events_dispatched;
                if (!ok)
                    return {false, cat("seed ", seed, " p=", p, " ", to_string(s), " broke an identity")};
            }
        }
    }
    return {true, cat(runs, " runs, ", checks, " per-event invariant checks")};
}

std::uint64_t digest(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::uint64_t h = 1469598103934665603ULL;
    char ch;
    while (in.get(ch)) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    return h;
}

Outcome determinism()
{
    const auto dir = std::filesystem::temp_directory_path() / "oocsim_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<ScenarioConfig> configs = {scenario_figure1(), scenario_light_load(Scheme::Ooc3),
                                           scenario_congestion(Scheme::Ooc2, 5),
                                           scenario_forced_timeouts(8, 3, SourceMode::Optimistic)};
    configs[0].max_time = SimTime::from_ms(20'000);
    configs.push_back(parse_config("scheme=ooc4\nwindow=6\npackets=500\nloss_p=0.2\nack_lossless=false\nseed=77\n"));
    std::size_t same = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        std::uint64_t d[2][2];
        for (int k = 0; k < 2; ++k) {
            ScenarioConfig c = configs[i];
            c.metrics_out = (dir / cat("m", i, "_", k, ".csv")).string();
            c.trace_out = (dir / cat("t", i, "_", k, ".csv")).string();
            run_scenario(c);
            d[k][0] = digest(c.metrics_out);
            d[k][1] = digest(c.trace_out);
        }
        same += d[0][0] == d[1][0] && d[0][1] == d[1][1];
    }
    return {same == configs.size(), cat(same, "/", configs.size(), " configs reproduce byte for byte")};
}

Outcome recurrence()
{
    RttEstimator e{TimerParams{}};
    double worst = 0.0;
    double min_ratio = 1e300;
    double prev = e.srtt_ms();
    for (int k = 1; k <= kRecurrenceSteps; ++k) {
        e.update(e.rto_ms() + 20.0);
        // srtt_k = 1.125 srtt_{k-1} + 2.5, whose fixed point is -20.
        const double closed = 120.0 * std::pow(1.125, k) - 20.0;
        worst = std::max(worst, std::abs(e.srtt_ms() - closed) / closed);
        min_ratio = std::min(min_ratio, e.srtt_ms() / prev);
        prev = e.srtt_ms();
    }
    const bool ok = worst <= kRecurrenceTolerance && min_ratio >= 1.125;
    return {ok, cat("max relative error ", worst, ", min growth ", min_ratio, ", srtt_50 ", e.srtt_ms(), " ms")};
}

}  // namespace

int main()
{
    criterion(1, "figure-1 reproduction", kFigure1MaxSeconds, figure1);
    criterion(2, "injection formulas", kInjectionMaxSeconds, injections);
    criterion(3, "congestion inequalities", kCongestionMaxSeconds, congestion);
    criterion(4, "light-load ordering", kLightLoadMaxSeconds, light_load);
    criterion(5, "correctness properties", kPropertyMaxSeconds, properties);
    criterion(6, "determinism", 0, determinism);
    criterion(7, "estimator recurrence", 0, recurrence);
    return failures == 0 ? 0 : 1;
}

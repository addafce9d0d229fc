#include "oocsim/experiments.hpp"

#include <algorithm>
#include <sstream>

#include "oocsim/simulation.hpp"

namespace oocsim {

namespace {

template <typename... Args>
std::string cat(const Args&... args)
{
    std::ostringstream out;
    (out << ... << args);
    return out.str();
}

}  // namespace

bool all_passed(const std::vector<Claim>& claims)
{
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.passed; });
}

std::vector<Claim> figure1_claims()
{
    ScenarioConfig config = scenario_figure1();
    const RunResult r = simulate(config);
    const Metrics& m = r.metrics;
    std::vector<Claim> out;

    // First arrival of a retransmitted copy of packet 1.
    SimTime retx_arrival = SimTime::from_ms(-1);
    for (const SinkArrival& a : r.sink_arrivals) {
        if (a.seq == 1 && a.attempt >= 2) {
            retx_arrival = a.at;
            break;
        }
    }
    int early_drops = 0;
    for (const SinkArrival& a : r.sink_arrivals) {
        if (a.seq >= 2 && a.seq <= 4 && a.attempt == 1 && a.at < retx_arrival &&
            a.disposition == Disposition::DroppedOutOfOrder)
            ++early_drops;
    }
    out.push_back({"packets 2-4 discarded out of order before packet 1 returns",
                   retx_arrival.us() > 0 && early_drops == 3,
                   cat("retransmitted 1 arrives at ", retx_arrival.to_string(), " ms; ", early_drops,
                       " of 3 discarded earlier")});

    std::size_t twice = 0;
    for (Seq s : r.delivered) {
        if (m.transmit_counts.at(static_cast<std::size_t>(s - 1)) == 2)
            ++twice;
    }
    out.push_back({"every delivered packet was transmitted exactly twice",
                   !r.delivered.empty() && twice == r.delivered.size() && r.delivered.size() <= 200,
                   cat(twice, " of ", r.delivered.size(), " delivered packets sent twice")});

    bool rising = r.rto_at_expiry.size() >= 2;
    for (std::size_t i = 1; i < r.rto_at_expiry.size(); ++i)
        rising = rising && r.rto_at_expiry[i] > r.rto_at_expiry[i - 1];
    const double growth = m.final_rto_ms / r.initial_rto_ms;
    out.push_back({"rto rises at every timeout and grows more than tenfold", rising && growth > 10.0,
                   cat(r.rto_at_expiry.size(), " timeouts, rto ", r.initial_rto_ms, " -> ", m.final_rto_ms,
                       " ms (x", growth, ")")});

    out.push_back({"goodput collapses in the second half",
                   m.goodput_second_half < 0.8 * m.goodput_first_half,
                   cat("first half ", m.goodput_first_half, " pps, second half ", m.goodput_second_half,
                       " pps")});
    return out;
}

std::uint64_t stall_injections(const ScenarioConfig& config)
{
    ScenarioConfig c = config;
    c.record_trace = true;
    const RunResult r = simulate(c);
    if (r.ack_progress_times.empty())
        return 0;
    const SimTime first_progress = r.ack_progress_times.front();
    std::uint64_t n = 0;
    for (const TraceRecord& row : r.trace.rows()) {
        if (row.time >= first_progress)
            break;
        if (row.node == TraceNode::Src && (row.event == "send" || row.event == "retransmit"))
            ++n;
    }
    return n;
}

std::vector<Claim> forced_timeout_claims()
{
    std::vector<Claim> out;
    for (SourceMode policy : {SourceMode::Pessimistic, SourceMode::Optimistic}) {
        const bool pess = policy == SourceMode::Pessimistic;
        std::ostringstream detail;
        bool ok = true;
        for (std::size_t c : {1, 4, 8}) {
            for (std::size_t n : {0, 1, 3, 5}) {
                const std::uint64_t expect = pess ? (1 + n) * c : c + n;
                const std::uint64_t got = stall_injections(scenario_forced_timeouts(c, n, policy));
                ok = ok && got == expect;
                detail << " C=" << c << ",n=" << n << ":" << got;
                if (got != expect)
                    detail << "(want " << expect << ")";
            }
        }
        out.push_back({pess ? "pessimistic stall injects (1+n)C" : "optimistic stall injects C+n", ok,
                       detail.str().substr(1)});
    }
    return out;
}

std::vector<std::vector<Metrics>> congestion_sweep(std::size_t seeds)
{
    std::vector<std::vector<Metrics>> rows;
    rows.reserve(seeds);
    for (std::uint64_t seed = 1; seed <= seeds; ++seed)
        rows.push_back(compare_schemes(scenario_congestion(Scheme::Ooc1, seed)));
    return rows;
}

std::vector<Claim> congestion_claims(std::size_t seeds)
{
    const auto rows = congestion_sweep(seeds);
    std::size_t w12 = 0;
    std::size_t w43 = 0;
    std::size_t inj = 0;
    double mean[4] = {0, 0, 0, 0};
    for (const auto& m : rows) {
        w12 += m[0].goodput > m[1].goodput;
        w43 += m[3].goodput > m[2].goodput;
        inj += m[1].data_transmissions_total > m[0].data_transmissions_total;
        for (int i = 0; i < 4; ++i)
            mean[i] += m[i].goodput / static_cast<double>(seeds);
    }
    const std::size_t need = (seeds * 9 + 9) / 10;
    std::vector<Claim> out;
    out.push_back({"ooc1 outperforms ooc2 under congestion", w12 >= need && mean[0] > mean[1],
                   cat(w12, "/", seeds, " seeds; mean ", mean[0], " vs ", mean[1], " pps")});
    out.push_back({"ooc4 outperforms ooc3 under congestion", w43 >= need && mean[3] > mean[2],
                   cat(w43, "/", seeds, " seeds; mean ", mean[3], " vs ", mean[2], " pps")});
    out.push_back({"ooc2 injects more packets than ooc1", inj == seeds, cat(inj, "/", seeds, " seeds")});
    return out;
}

std::vector<Claim> light_load_claims()
{
    const std::vector<Metrics> m = compare_schemes(scenario_light_load());
    const bool ordered = m[0].goodput <= m[1].goodput && m[1].goodput <= m[2].goodput &&
                         m[2].goodput <= m[3].goodput;
    const bool best = m[3].goodput > m[2].goodput;
    return {{"light-load goodput ooc1 <= ooc2 <= ooc3 < ooc4", ordered && best,
             cat("goodput ", m[0].goodput, " / ", m[1].goodput, " / ", m[2].goodput, " / ", m[3].goodput,
                 " pps")}};
}

}  // namespace oocsim

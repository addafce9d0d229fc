#include "oocsim/metrics.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace oocsim {

namespace {

std::string fixed6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string metrics_csv_row(const Metrics& m)
{
    std::ostringstream o;
    o << m.scheme << ',' << m.seed << ',' << m.sim_duration.to_string() << ',' << m.delivered << ','
      << m.data_transmissions_total << ',' << m.retransmissions << ',' << m.timeout_events << ','
      << m.duplicates_at_sink << ',' << m.out_of_order_drops << ',' << m.overflow_drops << ','
      << m.forced_drops << ',' << m.random_drops << ',' << m.cache_full_drops << ','
      << fixed6(m.goodput) << ',' << fixed6(m.goodput_first_half) << ','
      << fixed6(m.goodput_second_half) << ',' << fixed6(m.final_srtt_ms) << ','
      << fixed6(m.final_rto_ms) << ',' << m.peak_cache_occupancy << ',';
    for (std::size_t i = 0; i < m.transmit_counts.size(); ++i)
        o << (i ? ";" : "") << m.transmit_counts[i];
    return o.str();
}

void write_metrics_csv(std::ostream& out, const std::vector<Metrics>& rows)
{
    out << kMetricsCsvHeader << '\n';
    for (const auto& m : rows)
        out << metrics_csv_row(m) << '\n';
}

std::vector<Metrics> read_metrics_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kMetricsCsvHeader)
        throw std::runtime_error("metrics csv: missing or unexpected header");
    std::vector<Metrics> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 20)
            throw std::runtime_error("metrics csv: expected 20 fields");
        Metrics m;
        m.scheme = f[0];
        m.seed = std::stoull(f[1]);
        m.sim_duration = SimTime::from_ms_real(std::stod(f[2]));
        m.delivered = std::stoull(f[3]);
        m.data_transmissions_total = std::stoull(f[4]);
        m.retransmissions = std::stoull(f[5]);
        m.timeout_events = std::stoull(f[6]);
        m.duplicates_at_sink = std::stoull(f[7]);
        m.out_of_order_drops = std::stoull(f[8]);
        m.overflow_drops = std::stoull(f[9]);
        m.forced_drops = std::stoull(f[10]);
        m.random_drops = std::stoull(f[11]);
        m.cache_full_drops = std::stoull(f[12]);
        m.goodput = std::stod(f[13]);
        m.goodput_first_half = std::stod(f[14]);
        m.goodput_second_half = std::stod(f[15]);
        m.final_srtt_ms = std::stod(f[16]);
        m.final_rto_ms = std::stod(f[17]);
        m.peak_cache_occupancy = std::stoull(f[18]);
        if (!f[19].empty()) {
            for (const auto& c : split(f[19], ';'))
                m.transmit_counts.push_back(static_cast<std::uint32_t>(std::stoul(c)));
        }
        rows.push_back(std::move(m));
    }
    return rows;
}

}  // namespace oocsim

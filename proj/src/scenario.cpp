#include "oocsim/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace oocsim {

SchemePolicy policy_for(Scheme s)
{
    switch (s) {
    case Scheme::Ooc1: return {SourceMode::Optimistic, SinkMode::NonCaching};
    case Scheme::Ooc2: return {SourceMode::Pessimistic, SinkMode::NonCaching};
    case Scheme::Ooc3: return {SourceMode::Pessimistic, SinkMode::Caching};
    case Scheme::Ooc4: return {SourceMode::Optimistic, SinkMode::Caching};
    }
    return {SourceMode::Optimistic, SinkMode::Caching};
}

Scheme scheme_for(SourceMode source, SinkMode sink)
{
    if (source == SourceMode::Optimistic)
        return sink == SinkMode::NonCaching ? Scheme::Ooc1 : Scheme::Ooc4;
    return sink == SinkMode::NonCaching ? Scheme::Ooc2 : Scheme::Ooc3;
}

std::string_view to_string(Scheme s)
{
    switch (s) {
    case Scheme::Ooc1: return "ooc1";
    case Scheme::Ooc2: return "ooc2";
    case Scheme::Ooc3: return "ooc3";
    case Scheme::Ooc4: return "ooc4";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view text)
{
    if (text.size() != 4 || !(text.starts_with("ooc") || text.starts_with("ooo")))
        return std::nullopt;
    switch (text[3]) {
    case '1': return Scheme::Ooc1;
    case '2': return Scheme::Ooc2;
    case '3': return Scheme::Ooc3;
    case '4': return Scheme::Ooc4;
    default: return std::nullopt;
    }
}

std::string_view to_string(StopKind s)
{
    switch (s) {
    case StopKind::MaxTime: return "max_time";
    case StopKind::Delivered: return "delivered";
    case StopKind::QueueEmpty: return "queue_empty";
    }
    return "?";
}

void ScenarioConfig::set_scheme(Scheme s)
{
    const auto p = policy_for(s);
    source_mode = p.source;
    sink_mode = p.sink;
}

void ScenarioConfig::validate() const
{
    if (window == 0)
        throw ConfigError("window", "must be positive");
    if (packets <= 0)
        throw ConfigError("packets", "must be positive");
    if (router.capacity == 0)
        throw ConfigError("buffer", "must be positive");
    if (router.service_time.us() <= 0)
        throw ConfigError("service_time_ms", "must be positive");
    if (link.forward_prop_delay.us() < 0)
        throw ConfigError("forward_delay_ms", "must be non-negative");
    if (link.reverse_prop_delay.us() < 0)
        throw ConfigError("reverse_delay_ms", "must be non-negative");
    if (link.delivery_delay.us() < 0)
        throw ConfigError("delivery_delay_ms", "must be non-negative");
    if (!(timer.alpha > 0.0 && timer.alpha < 1.0))
        throw ConfigError("alpha", "must lie in (0,1)");
    if (!(timer.beta >= 1.0))
        throw ConfigError("beta", "must be >= 1");
    if (timer.rto_min.us() <= 0)
        throw ConfigError("rto_min_ms", "must be positive");
    if (timer.rto_max < timer.rto_min)
        throw ConfigError("rto_max_ms", "must be >= rto_min_ms");
    if (timer.initial_srtt.us() <= 0)
        throw ConfigError("initial_srtt_ms", "must be positive");
    if (!(loss.bernoulli_p >= 0.0 && loss.bernoulli_p <= 1.0))
        throw ConfigError("loss_p", "must lie in [0,1]");
    if (cache_capacity && *cache_capacity == 0)
        throw ConfigError("cache_capacity", "must be positive (0 in files means unlimited)");
    if (max_time.us() <= 0)
        throw ConfigError("max_time_ms", "must be positive");
    for (const auto& [seq, attempt] : loss.forced_drops) {
        if (seq < 1 || attempt < 1)
            throw ConfigError("forced_drops", "entries must be seq:attempt with both >= 1");
    }
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view v)
{
    Int out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(std::string(key), "expected an integer, got '" + std::string(v) + "'");
    return out;
}

double parse_real(std::string_view key, std::string_view v)
{
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(v) + "'");
    return out;
}

SimTime parse_time(std::string_view key, std::string_view v)
{
    auto t = parse_ms(v);
    if (!t)
        throw ConfigError(std::string(key), "expected milliseconds with at most 3 decimals, got '" +
                                                std::string(v) + "'");
    return *t;
}

bool parse_bool(std::string_view key, std::string_view v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw ConfigError(std::string(key), "expected true/false, got '" + std::string(v) + "'");
}

std::set<std::pair<Seq, std::uint32_t>> parse_forced(std::string_view key, std::string_view v)
{
    std::set<std::pair<Seq, std::uint32_t>> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const auto item = trim(v.substr(0, comma));
        v = comma == std::string_view::npos ? std::string_view{} : v.substr(comma + 1);
        if (item.empty())
            continue;
        const auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw ConfigError(std::string(key), "expected seq:attempt, got '" + std::string(item) + "'");
        out.emplace(parse_int<Seq>(key, trim(item.substr(0, colon))),
                    parse_int<std::uint32_t>(key, trim(item.substr(colon + 1))));
    }
    return out;
}

std::string fmt_real(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

void apply_setting(ScenarioConfig& c, std::string_view key, std::string_view value)
{
    const std::string k(key);
    const auto v = trim(value);
    if (k == "scheme") {
        auto s = parse_scheme(v);
        if (!s)
            throw ConfigError(k, "expected ooc1..ooc4, got '" + std::string(v) + "'");
        c.set_scheme(*s);
    } else if (k == "source_mode") {
        if (v == "optimistic")
            c.source_mode = SourceMode::Optimistic;
        else if (v == "pessimistic")
            c.source_mode = SourceMode::Pessimistic;
        else
            throw ConfigError(k, "expected optimistic|pessimistic");
    } else if (k == "sink_mode") {
        if (v == "caching")
            c.sink_mode = SinkMode::Caching;
        else if (v == "non_caching")
            c.sink_mode = SinkMode::NonCaching;
        else
            throw ConfigError(k, "expected caching|non_caching");
    } else if (k == "cache_capacity") {
        const auto n = parse_int<std::size_t>(k, v);
        c.cache_capacity = n == 0 ? std::nullopt : std::optional<std::size_t>(n);
    } else if (k == "window") {
        c.window = parse_int<std::size_t>(k, v);
    } else if (k == "packets") {
        c.packets = parse_int<Seq>(k, v);
    } else if (k == "send_interval_ms") {
        c.send_interval = parse_time(k, v);
    } else if (k == "alpha") {
        c.timer.alpha = parse_real(k, v);
    } else if (k == "beta") {
        c.timer.beta = parse_real(k, v);
    } else if (k == "rto_min_ms") {
        c.timer.rto_min = parse_time(k, v);
    } else if (k == "rto_max_ms") {
        c.timer.rto_max = parse_time(k, v);
    } else if (k == "initial_srtt_ms") {
        c.timer.initial_srtt = parse_time(k, v);
    } else if (k == "exponential_backoff") {
        c.timer.exponential_backoff = parse_bool(k, v);
    } else if (k == "forward_delay_ms") {
        c.link.forward_prop_delay = parse_time(k, v);
    } else if (k == "delivery_delay_ms") {
        c.link.delivery_delay = parse_time(k, v);
    } else if (k == "reverse_delay_ms") {
        c.link.reverse_prop_delay = parse_time(k, v);
    } else if (k == "ack_lossless") {
        c.link.ack_lossless = parse_bool(k, v);
    } else if (k == "buffer") {
        c.router.capacity = parse_int<std::size_t>(k, v);
    } else if (k == "service_time_ms") {
        c.router.service_time = parse_time(k, v);
    } else if (k == "forced_drops") {
        c.loss.forced_drops = parse_forced(k, v);
    } else if (k == "loss_p") {
        c.loss.bernoulli_p = parse_real(k, v);
    } else if (k == "cross_interarrival_ms") {
        c.cross_interarrival = parse_time(k, v);
    } else if (k == "seed") {
        c.seed = parse_int<std::uint64_t>(k, v);
    } else if (k == "stop") {
        if (v == "max_time")
            c.stop = StopKind::MaxTime;
        else if (v == "delivered")
            c.stop = StopKind::Delivered;
        else if (v == "queue_empty")
            c.stop = StopKind::QueueEmpty;
        else
            throw ConfigError(k, "expected max_time|delivered|queue_empty");
    } else if (k == "max_time_ms") {
        c.max_time = parse_time(k, v);
    } else if (k == "metrics_out") {
        c.metrics_out = std::string(v);
    } else if (k == "trace_out") {
        c.trace_out = std::string(v);
    } else if (k == "check_invariants") {
        c.check_invariants = parse_bool(k, v);
    } else {
        throw ConfigError(k, "unknown setting");
    }
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base)
{
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected key=value");
        apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return base;
}

ScenarioConfig load_config_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string render_config(const ScenarioConfig& c)
{
    std::ostringstream o;
    o << "source_mode=" << to_string(c.source_mode) << '\n'
      << "sink_mode=" << to_string(c.sink_mode) << '\n'
      << "cache_capacity=" << c.cache_capacity.value_or(0) << '\n'
      << "window=" << c.window << '\n'
      << "packets=" << c.packets << '\n'
      << "send_interval_ms=" << c.send_interval.to_string() << '\n'
      << "alpha=" << fmt_real(c.timer.alpha) << '\n'
      << "beta=" << fmt_real(c.timer.beta) << '\n'
      << "rto_min_ms=" << c.timer.rto_min.to_string() << '\n'
      << "rto_max_ms=" << c.timer.rto_max.to_string() << '\n'
      << "initial_srtt_ms=" << c.timer.initial_srtt.to_string() << '\n'
      << "exponential_backoff=" << (c.timer.exponential_backoff ? "true" : "false") << '\n'
      << "forward_delay_ms=" << c.link.forward_prop_delay.to_string() << '\n'
      << "delivery_delay_ms=" << c.link.delivery_delay.to_string() << '\n'
      << "reverse_delay_ms=" << c.link.reverse_prop_delay.to_string() << '\n'
      << "ack_lossless=" << (c.link.ack_lossless ? "true" : "false") << '\n'
      << "buffer=" << c.router.capacity << '\n'
      << "service_time_ms=" << c.router.service_time.to_string() << '\n'
      << "forced_drops=";
    bool first = true;
    for (const auto& [seq, attempt] : c.loss.forced_drops) {
        o << (first ? "" : ",") << seq << ':' << attempt;
        first = false;
    }
    o << '\n'
      << "loss_p=" << fmt_real(c.loss.bernoulli_p) << '\n'
      << "cross_interarrival_ms=" << c.cross_interarrival.to_string() << '\n'
      << "seed=" << c.seed << '\n'
      << "stop=" << to_string(c.stop) << '\n'
      << "max_time_ms=" << c.max_time.to_string() << '\n';
    if (!c.metrics_out.empty())
        o << "metrics_out=" << c.metrics_out << '\n';
    if (!c.trace_out.empty())
        o << "trace_out=" << c.trace_out << '\n';
    return o.str();
}

ScenarioConfig scenario_figure1()
{
    ScenarioConfig c;
    c.set_scheme(Scheme::Ooc1);
    c.window = 4;
    c.packets = 100'000;
    c.send_interval = SimTime::from_ms(30);
    c.timer.initial_srtt = SimTime::from_ms(100);
    c.link.forward_prop_delay = SimTime::from_ms(10);
    c.link.reverse_prop_delay = SimTime::from_ms(10);
    c.router.capacity = 10'000;
    c.router.service_time = SimTime::from_ms(1);
    c.loss.forced_drops = {{1, 1}};
    c.stop = StopKind::MaxTime;
    c.max_time = SimTime::from_ms(200'000);
    return c;
}

ScenarioConfig scenario_forced_timeouts(std::size_t window, std::size_t timeouts, SourceMode policy)
{
    ScenarioConfig c;
    c.source_mode = policy;
    c.sink_mode = SinkMode::Caching;
    c.window = window;
    c.packets = static_cast<Seq>(window);
    // 1 ms spacing staggers the per-packet timers so expiries never tie.
    c.send_interval = SimTime::from_ms(1);
    c.timer.initial_srtt = SimTime::from_ms(100);
    const SimTime rto = SimTime::from_ms(200);
    c.link.forward_prop_delay = SimTime::from_ms(10);
    c.router.capacity = 10'000;
    c.router.service_time = SimTime::from_ms(1);
    c.stop = StopKind::QueueEmpty;
    c.max_time = SimTime::from_ms(10'000'000);

    // No ack can make progress before the timeouts-th expiry. rto stays put
    // until the first sample, so expiry times are known in closed form:
    // pessimistic expiries re-arm every timer together (k * rto); optimistic
    // ones cycle through the window, packet i firing at (i-1) ms + k * rto.
    SimTime last_expiry = SimTime::from_ms(100);
    if (timeouts > 0) {
        const auto k = static_cast<std::int64_t>(timeouts);
        const auto w = static_cast<std::int64_t>(window);
        last_expiry = policy == SourceMode::Pessimistic
                          ? rto * k
                          : rto * ((k - 1) / w + 1) + SimTime::from_ms((k - 1) % w);
    }
    // Packet 1 reaches the sink at forward delay + one service time.
    const SimTime first_arrival = c.link.forward_prop_delay + c.router.service_time;
    c.link.reverse_prop_delay = last_expiry + SimTime::from_us(500) - first_arrival;
    return c;
}

ScenarioConfig scenario_congestion(Scheme scheme, std::uint64_t seed)
{
    ScenarioConfig c;
    c.set_scheme(scheme);
    c.window = 6;
    c.packets = 2000;
    c.timer.initial_srtt = SimTime::from_ms(25);
    // Without a ceiling the non-caching schemes stall for good once a loss
    // burst inflates srtt.
    c.timer.rto_max = SimTime::from_ms(300);
    c.link.forward_prop_delay = SimTime::from_ms(5);
    c.link.reverse_prop_delay = SimTime::from_ms(20);
    c.router.capacity = 4;
    c.router.service_time = SimTime::from_ms(2);
    c.cross_interarrival = SimTime::from_ms(24);
    c.seed = seed;
    c.stop = StopKind::Delivered;
    // Cross traffic costs events for as long as the run lasts.
    c.max_time = SimTime::from_ms(10'000'000);
    return c;
}

ScenarioConfig scenario_light_load(Scheme scheme)
{
    ScenarioConfig c;
    c.set_scheme(scheme);
    c.window = 4;
    c.packets = 40;
    c.send_interval = SimTime::from_ms(11);
    c.timer.initial_srtt = SimTime::from_ms(25);
    c.link.forward_prop_delay = SimTime::from_us(250);
    c.link.reverse_prop_delay = SimTime::from_us(250);
    c.router.capacity = 10'000;
    c.router.service_time = SimTime::from_ms(10);
    c.loss.forced_drops = {{1, 1}};
    c.stop = StopKind::Delivered;
    return c;
}

}  // namespace oocsim

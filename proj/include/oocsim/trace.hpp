#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "oocsim/packet.hpp"
#include "oocsim/sim_time.hpp"

namespace oocsim {

enum class TraceNode : std::uint8_t { Src, Rtr, Snk };

const char* to_string(TraceNode n);

struct TraceRecord {
    std::uint64_t row = 0;
    SimTime time;
    TraceNode node = TraceNode::Src;
    std::string event;
    Seq seq = 0;
    std::uint32_t attempt = 0;
    std::string detail;
};

// Per-run event trace. Rows are numbered in emission order, which is also
// (time, dispatch) order since emission only happens inside dispatch.
class Trace {
public:
    explicit Trace(bool enabled = false) : enabled_(enabled) {}

    bool enabled() const { return enabled_; }

    void add(SimTime time, TraceNode node, std::string_view event, Seq seq, std::uint32_t attempt,
             std::string detail = {});

    const std::vector<TraceRecord>& rows() const { return rows_; }

    static constexpr std::string_view csv_header = "row,time_ms,scheme,node,event,seq,attempt,detail";
    void write_csv(std::ostream& out, std::string_view scheme) const;

private:
    bool enabled_;
    std::vector<TraceRecord> rows_;
};

}  // namespace oocsim

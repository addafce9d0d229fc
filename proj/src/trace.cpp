#include "oocsim/trace.hpp"

#include <ostream>

namespace oocsim {

const char* to_string(TraceNode n)
{
    switch (n) {
    case TraceNode::Src: return "src";
    case TraceNode::Rtr: return "rtr";
    case TraceNode::Snk: return "snk";
    }
    return "?";
}

void Trace::add(SimTime time, TraceNode node, std::string_view event, Seq seq, std::uint32_t attempt,
                std::string detail)
{
    if (!enabled_)
        return;
    rows_.push_back(TraceRecord{rows_.size() + 1, time, node, std::string(event), seq, attempt,
                                std::move(detail)});
}

void Trace::write_csv(std::ostream& out, std::string_view scheme) const
{
    out << csv_header << '\n';
    for (const auto& r : rows_) {
        out << r.row << ',' << r.time.to_string() << ',' << scheme << ',' << to_string(r.node) << ','
            << r.event << ',' << r.seq << ',' << r.attempt << ',' << r.detail << '\n';
    }
}

}  // namespace oocsim

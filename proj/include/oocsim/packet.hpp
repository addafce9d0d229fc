#pragma once

#include <cstdint>

#include "oocsim/sim_time.hpp"

namespace oocsim {

using Seq = std::int64_t;

enum class PacketKind : std::uint8_t { Data, Ack };
// Cross traffic shares the router with the connection under study but never
// reaches the sink.
enum class Flow : std::uint8_t { Main, Cross };

struct Packet {
    PacketKind kind = PacketKind::Data;
    // Data: sequence number >= 1. Ack: cumulative ack number >= 0.
    Seq seq = 0;
    // Transmission instance, 1 for the first copy.
    std::uint32_t attempt = 1;
    SimTime created_at;
    SimTime first_sent_at;
    SimTime this_sent_at;
    std::uint32_t size = 1;
    Flow flow = Flow::Main;

    bool is_retransmission() const { return attempt > 1; }
};

}  // namespace oocsim

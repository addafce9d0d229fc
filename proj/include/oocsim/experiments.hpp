#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "oocsim/metrics.hpp"
#include "oocsim/scenario.hpp"

namespace oocsim {

struct Claim {
    std::string name;
    bool passed = false;
    std::string detail;
};

bool all_passed(const std::vector<Claim>& claims);

std::vector<Claim> figure1_claims();
std::vector<Claim> forced_timeout_claims();
std::vector<Claim> congestion_claims(std::size_t seeds = 20);
std::vector<Claim> light_load_claims();

// Transmissions made strictly before the first cumulative-ack progress.
std::uint64_t stall_injections(const ScenarioConfig& config);

// Metrics for ooc1..ooc4 (index 0..3) on scenario_congestion, seeds 1..n.
std::vector<std::vector<Metrics>> congestion_sweep(std::size_t seeds);

}  // namespace oocsim

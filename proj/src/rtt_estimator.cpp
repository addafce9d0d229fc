#include "oocsim/rtt_estimator.hpp"

#include <algorithm>

#include "oocsim/engine.hpp"

namespace oocsim {

RttEstimator::RttEstimator(const TimerParams& params)
    : params_(params), srtt_ms_(params.initial_srtt.ms())
{
    if (!(params_.alpha > 0.0 && params_.alpha < 1.0))
        throw SimulationError("timer alpha must lie in (0,1)");
    if (params_.beta < 1.0)
        throw SimulationError("timer beta must be >= 1");
    if (params_.rto_min.us() <= 0 || params_.rto_max < params_.rto_min)
        throw SimulationError("timer rto bounds invalid");
    if (params_.initial_srtt.us() <= 0)
        throw SimulationError("initial srtt must be positive");
    rto_ms_ = clamp_rto(params_.beta * srtt_ms_);
}

double RttEstimator::clamp_rto(double ms) const
{
    return std::clamp(ms, params_.rto_min.ms(), params_.rto_max.ms());
}

RttEstimator::Estimate RttEstimator::update(double sample_ms)
{
    if (!(sample_ms > 0.0))
        throw SimulationError("rtt sample must be positive");
    srtt_ms_ = params_.alpha * srtt_ms_ + (1.0 - params_.alpha) * sample_ms;
    rto_ms_ = clamp_rto(params_.beta * srtt_ms_);
    return {srtt_ms_, rto_ms_};
}

void RttEstimator::backoff()
{
    rto_ms_ = clamp_rto(2.0 * rto_ms_);
}

}  // namespace oocsim

#pragma once

#include "oocsim/sim_time.hpp"

namespace oocsim {

struct TimerParams {
    // srtt <- alpha * srtt + (1 - alpha) * sample
    double alpha = 0.875;
    // rto <- clamp(beta * srtt, rto_min, rto_max)
    double beta = 2.0;
    SimTime rto_min = SimTime::from_ms(1);
    SimTime rto_max = SimTime::from_ms(1'000'000'000);
    SimTime initial_srtt = SimTime::from_ms(100);
    // Doubles rto on every expiry. Off by default; only for contrast runs.
    bool exponential_backoff = false;

    // With the defaults a sample that arrives one full rto late feeds back
    // into srtt with gain alpha + beta * (1 - alpha) > 1.
    double divergence_gain() const { return alpha + beta * (1.0 - alpha); }
};

// Exponentially weighted round-trip estimator in the RFC 793 style. State is
// kept in real-valued milliseconds so the recurrence is exact up to double
// rounding; timers convert to SimTime only when armed.
class RttEstimator {
public:
    struct Estimate {
        double srtt_ms;
        double rto_ms;
    };

    explicit RttEstimator(const TimerParams& params);

    Estimate update(double sample_ms);
    Estimate update(SimTime sample) { return update(sample.ms()); }

    // Binary backoff, clamped to rto_max.
    void backoff();

    double srtt_ms() const { return srtt_ms_; }
    double rto_ms() const { return rto_ms_; }
    // Rounded to the nearest microsecond.
    SimTime rto() const { return SimTime::from_ms_real(rto_ms_); }
    const TimerParams& params() const { return params_; }

private:
    double clamp_rto(double ms) const;

    TimerParams params_;
    double srtt_ms_;
    double rto_ms_;
};

}  // namespace oocsim

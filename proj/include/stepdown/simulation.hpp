#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "stepdown/scenarios.hpp"
#include "stepdown/types.hpp"

namespace stepdown {

struct MetricEstimate {
    double mean = 0.0;
    double se = 0.0;
};

struct SimulationReport {
    Scenario scenario;
    CriticalSequence sequence;
    StepMode mode = StepMode::stepdown;
    long long trials = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    // keys: p_fdp_gt_gamma, fdr, kfwer, mean_rejections, thm32_bound
    std::map<std::string, MetricEstimate> estimates;
};

// Monte Carlo estimate of the error metrics for one (scenario, constants,
// mode) triple. Each trial draws from its own derived stream, trials are
// grouped into fixed-size blocks, and block partials are combined in block
// order with compensated summation, so the estimates are identical for any
// worker count. Event metrics get SE = sqrt(p(1-p)/n); averaged metrics get
// the sample standard error.
SimulationReport run(const Scenario& scenario, const CriticalSequence& sequence, StepMode mode,
                     long long trials, std::uint64_t seed, int workers = 1);

}  // namespace stepdown

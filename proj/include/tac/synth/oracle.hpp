#pragma once

#include <vector>

#include "tac/cachesim/metrics.hpp"
#include "tac/cachesim/topic.hpp"
#include "tac/corpus/types.hpp"

namespace tac::synth {

/// Brute-force recomputation of the four cache metrics by nested loops over
/// every (topic, tweet) pair, assuming unbounded Prior Lists.
cachesim::MetricsReport oracle_metrics(const std::vector<cachesim::Topic>& topics,
                                       const std::vector<corpus::Tweet>& train,
                                       const std::vector<corpus::Tweet>& test);

}  // namespace tac::synth

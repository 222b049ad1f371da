#pragma once

#include <string>
#include <vector>

namespace tac::synth {

/// Greedy matching of recovered to planted topics by word overlap: the
/// pair with the largest overlap is matched first (ties to the lower planted
/// then lower recovered index) until one side runs out. Returns the mean
/// over planted topics of overlap / |planted words|, unmatched topics
/// scoring 0.
double topic_recovery_score(const std::vector<std::vector<std::string>>& planted,
                            const std::vector<std::vector<std::string>>& recovered);

}  // namespace tac::synth

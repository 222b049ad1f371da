#include "tac/synth/recovery.hpp"

#include <algorithm>

namespace tac::synth {

double topic_recovery_score(const std::vector<std::vector<std::string>>& planted,
                            const std::vector<std::vector<std::string>>& recovered) {
  if (planted.empty()) return 0.0;
  std::vector<std::vector<std::size_t>> overlap(planted.size(), std::vector<std::size_t>(recovered.size(), 0));
  for (std::size_t p = 0; p < planted.size(); ++p) {
    for (std::size_t r = 0; r < recovered.size(); ++r) {
      for (const auto& w : planted[p]) {
        if (std::find(recovered[r].begin(), recovered[r].end(), w) != recovered[r].end()) ++overlap[p][r];
      }
    }
  }
  std::vector<char> used_p(planted.size(), 0);
  std::vector<char> used_r(recovered.size(), 0);
  double total = 0.0;
  for (std::size_t round = 0; round < std::min(planted.size(), recovered.size()); ++round) {
    std::size_t bp = 0;
    std::size_t br = 0;
    bool found = false;
    for (std::size_t p = 0; p < planted.size(); ++p) {
      if (used_p[p]) continue;
      for (std::size_t r = 0; r < recovered.size(); ++r) {
        if (used_r[r]) continue;
        if (!found || overlap[p][r] > overlap[bp][br]) {
          bp = p;
          br = r;
          found = true;
        }
      }
    }
    used_p[bp] = 1;
    used_r[br] = 1;
    if (!planted[bp].empty()) {
      total += static_cast<double>(overlap[bp][br]) / static_cast<double>(planted[bp].size());
    }
  }
  return total / static_cast<double>(planted.size());
}

}  // namespace tac::synth

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "tac/common/errors.hpp"

namespace tac {

// Accumulates 2^(-(1/N) sum log2 q(x_i)) over observed model probabilities.
class PerplexityAccumulator {
 public:
  void add_log2(double log2_q) {
    sum_log2_ += log2_q;
    ++count_;
  }
  void add_probability(double q) { add_log2(std::log2(q)); }

  std::size_t count() const { return count_; }
  double mean_cross_entropy_bits() const { return -sum_log2_ / static_cast<double>(count_); }

  double value() const {
    if (count_ == 0) throw DataError("perplexity over zero tokens");
    return std::exp2(mean_cross_entropy_bits());
  }

 private:
  double sum_log2_ = 0.0;
  std::size_t count_ = 0;
};

inline double perplexity_from_probabilities(std::span<const double> q) {
  PerplexityAccumulator acc;
  for (double p : q) acc.add_probability(p);
  return acc.value();
}

}  // namespace tac

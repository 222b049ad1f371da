#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tac/cachesim/cache.hpp"
#include "tac/cachesim/topic.hpp"
#include "tac/corpus/types.hpp"

namespace tac::cachesim {

/// tweet_hit_rate: test tweets matched by at least one topic / test tweets.
/// tweet_hit_portion: topics matching at least one test tweet / topics.
/// cache_portion: cached bytes / bytes of distinct training media.
/// hit_cache_portion: bytes of distinct test media carried by a matched test
/// tweet / bytes of distinct test media.
/// A zero denominator gives 0 and sets the matching flag.
struct MetricsReport {
  double tweet_hit_rate = 0.0;
  double tweet_hit_portion = 0.0;
  double cache_portion = 0.0;
  double hit_cache_portion = 0.0;

  bool no_test_tweets = false;
  bool no_topics = false;
  bool no_train_media = false;
  bool no_test_media = false;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Throws DataError when a tweet id appears in both splits.
MetricsReport evaluate(const CacheState& cache, const std::vector<Topic>& topics,
                       const std::vector<corpus::Tweet>& train, const std::vector<corpus::Tweet>& test);

// Shortest round-trip decimal form.
std::string format_metric(double value);

struct MetricsRow {
  std::string method;
  std::size_t n_topics = 0;
  MetricsReport report;
};

void write_metrics_csv_header(std::ostream& out);
void write_metrics_csv_row(std::ostream& out, const MetricsRow& row);
// Throws DataError on a malformed file.
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

struct Split {
  std::vector<corpus::Tweet> train;
  std::vector<corpus::Tweet> test;
};

// Tweets with timestamp < boundary train, the rest test.
Split split_by_time(const std::vector<corpus::Tweet>& tweets, std::int64_t boundary);

}  // namespace tac::cachesim

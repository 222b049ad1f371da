#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tac/corpus/types.hpp"

namespace tac::synth {

inline constexpr int kRegions = 9;
inline constexpr int kMaxTweetWords = 20;

// Token labels besides topic ids.
inline constexpr int kBackgroundLabel = -1;
inline constexpr int kHapaxLabel = -2;

struct PlantedTopic {
  std::vector<std::string> words;
  std::vector<double> weights;  // normalized
};

/// Generative model for one corpus segment.
///
/// A tweet draws its region from `region_weights`, then its primary topic
/// from the affinity row of that region. Each token comes from the primary
/// topic with probability `primary_prob`, otherwise from a background word,
/// a fresh hapax word, or a uniformly chosen other topic, with the stated
/// probabilities. Noise tweets use background and hapax words only, with at
/// most `noise_max_background` distinct background words.
struct GeneratorSpec {
  std::vector<PlantedTopic> topics;
  std::array<std::vector<double>, kRegions> affinity;  // p(topic | region), rows normalized
  std::array<double, kRegions> region_weights{};

  int min_length = 4;
  int max_length = 12;
  double primary_prob = 0.85;
  double background_prob = 0.05;
  double hapax_prob = 0.02;  // the remainder goes to other topics
  std::vector<std::string> background;

  double noise_tweet_prob = 0.0;
  int noise_max_background = 2;

  double media_prob = 0.0769;
  double video_prob = 0.2;
  std::uint64_t image_bytes_min = 20'000;
  std::uint64_t image_bytes_max = 2'000'000;
  std::uint64_t video_bytes_min = 1'000'000;
  std::uint64_t video_bytes_max = 30'000'000;

  corpus::BoundingBox box;
  std::int64_t start_time = 1'530'000'000;
  std::int64_t interval = 60;
  std::string id_prefix = "s";
  std::size_t first_index = 0;  // numbering offset for ids, times and hapax words
  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigError
};

// Deterministic pseudo-words: distinct for distinct indices, ASCII letters
// only, never a stopword.
std::string synthetic_word(std::size_t index);
std::string hapax_word(std::size_t index);

/// `count` topics over disjoint vocabularies of `vocab_per_topic` words with
/// weights decaying geometrically by `decay`.
std::vector<PlantedTopic> make_topics(std::size_t count, std::size_t vocab_per_topic, double decay,
                                      std::size_t word_offset = 0);

/// Fills affinity and region weights from topic popularity: topic k lives in
/// region k mod 9 with probability `concentration`, spread evenly over the
/// other regions otherwise. The implied p(topic) equals `popularity`.
void set_affinity(GeneratorSpec& spec, const std::vector<double>& popularity, double concentration);

// Zipf weights 1/(k+1)^s, normalized.
std::vector<double> zipf_weights(std::size_t count, double exponent);

struct GroundTruth {
  std::string id;
  int primary_topic = -1;  // -1 for noise tweets
  corpus::RegionId region;
  std::vector<std::string> tokens;  // what cleaning must produce
  std::vector<int> token_topics;
};

struct SynthCorpus {
  std::vector<corpus::RawTweet> raw;
  std::vector<GroundTruth> truth;
};

// Deterministic in (spec, n); tweets are chronological.
SynthCorpus generate(const GeneratorSpec& spec, std::size_t n);

void write_truth_jsonl(std::ostream& out, const std::vector<GroundTruth>& truth);

/// Small default world: `topics` topics of 10 words, Zipf popularity 1.0,
/// concentration 0.8, background of 30 words.
GeneratorSpec default_spec(std::size_t topics, std::uint64_t seed);

/// Train and test corpus for cache experiments. Popular topics recur in the
/// test period; the last train tweets are a burst of short-lived topics with
/// many one-off words; a share of tweets are noise tweets carrying media.
struct CachingScenario {
  SynthCorpus corpus;  // chronological: train, burst, test
  std::int64_t split_time = 0;
  std::size_t planted_topics = 0;
};

struct CachingScenarioOptions {
  std::size_t topics = 120;
  std::size_t train_tweets = 8000;
  std::size_t burst_tweets = 150;
  std::size_t test_tweets = 1500;
  std::size_t test_active_topics = 40;
  std::uint64_t seed = 1;
};

CachingScenario caching_scenario(const CachingScenarioOptions& options);

}  // namespace tac::synth

#include "tac/synth/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include <json.hpp>

#include "tac/common/errors.hpp"
#include "tac/common/keyed_random.hpp"
#include "tac/corpus/region.hpp"
#include "tac/corpus/text_cleaner.hpp"

namespace tac::synth {
namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// all draws go through these helpers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

  template <typename Weights>
  std::size_t categorical(const Weights& w) {
    double total = 0.0;
    for (double x : w) total += x;
    double u = uniform() * total;
    std::size_t last = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] <= 0.0) continue;
      last = i;
      if (u < w[i]) return i;
      u -= w[i];
    }
    return last;
  }

  std::uint64_t log_uniform(std::uint64_t lo, std::uint64_t hi) {
    const double a = std::log(static_cast<double>(lo));
    const double b = std::log(static_cast<double>(hi));
    return static_cast<std::uint64_t>(std::llround(std::exp(a + (b - a) * uniform())));
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";

std::string syllables(std::size_t index, int count) {
  const std::size_t base = kConsonants.size() * kVowels.size();
  std::string out;
  for (int i = 0; i < count; ++i) {
    const std::size_t s = index % base;
    index /= base;
    out += kConsonants[s / kVowels.size()];
    out += kVowels[s % kVowels.size()];
  }
  return out;
}

bool normalized(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) return false;
    s += x;
  }
  return std::abs(s - 1.0) < 1e-9;
}

// Stopwords without apostrophes, usable as filler in raw text.
const std::vector<std::string>& filler_stopwords() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> out;
    for (const auto& w : corpus::default_stopwords()) {
      if (w.find('\'') == std::string::npos) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
  }();
  return words;
}

std::string decorate(const std::vector<std::string>& tokens, const std::vector<corpus::MediaRef>& media,
                     Rng& rng) {
  static constexpr std::string_view kPunct = ",.!?;:";
  static const std::vector<std::string> kJunk = {"2018", "10mm", "99", "\xE2\x98\x94", "caf\xC3\xA9", "&"};
  const auto& fillers = filler_stopwords();
  std::string text;
  auto emit = [&](const std::string& piece) {
    if (!text.empty()) text += ' ';
    text += piece;
  };
  for (const auto& tok : tokens) {
    if (rng.uniform() < 0.15) emit(fillers[rng.below(fillers.size())]);
    if (rng.uniform() < 0.05) emit(kJunk[rng.below(kJunk.size())]);
    std::string w = tok;
    const double c = rng.uniform();
    if (c < 0.2) {
      w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    } else if (c < 0.25) {
      for (auto& ch : w) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    if (rng.uniform() < 0.15) w += kPunct[rng.below(kPunct.size())];
    if (rng.uniform() < 0.03) w += "!!";
    emit(w);
  }
  for (const auto& m : media) emit(m.url);
  return text;
}

}  // namespace

void GeneratorSpec::validate() const {
  if (min_length < 1 || max_length < min_length || max_length > kMaxTweetWords) {
    throw ConfigError("tweet lengths must satisfy 1 <= min <= max <= 20");
  }
  if (topics.empty() && noise_tweet_prob < 1.0) throw ConfigError("generator needs at least one topic");
  for (const auto& t : topics) {
    if (t.words.empty() || t.words.size() != t.weights.size() || !normalized(t.weights)) {
      throw ConfigError("planted topic word distributions must be normalized");
    }
  }
  for (const auto& row : affinity) {
    if (!topics.empty() && (row.size() != topics.size() || !normalized(row))) {
      throw ConfigError("region-topic affinity rows must be normalized over the topics");
    }
  }
  if (!normalized(std::vector<double>(region_weights.begin(), region_weights.end()))) {
    throw ConfigError("region weights must be normalized");
  }
  for (double p : {primary_prob, background_prob, hapax_prob, noise_tweet_prob, media_prob, video_prob}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("generator probabilities must lie in [0, 1]");
  }
  if (primary_prob + background_prob + hapax_prob > 1.0 + 1e-12) {
    throw ConfigError("primary, background and hapax probabilities exceed 1");
  }
  if ((background_prob > 0.0 || noise_tweet_prob > 0.0) && background.empty() && noise_max_background > 0) {
    throw ConfigError("background probability set without background words");
  }
  if (image_bytes_min == 0 || image_bytes_max < image_bytes_min || video_bytes_min == 0 ||
      video_bytes_max < video_bytes_min) {
    throw ConfigError("media size ranges must be positive and ordered");
  }
  box.validate();
}

std::string synthetic_word(std::size_t index) {
  // Plain words always end in a vowel, so the suffix keeps them distinct.
  std::string w = syllables(index, 3);
  if (corpus::default_stopwords().contains(w)) w += 'q';
  return w;
}

std::string hapax_word(std::size_t index) { return "h" + syllables(index, 5); }

std::vector<PlantedTopic> make_topics(std::size_t count, std::size_t vocab_per_topic, double decay,
                                      std::size_t word_offset) {
  std::vector<PlantedTopic> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    double w = 1.0;
    for (std::size_t j = 0; j < vocab_per_topic; ++j) {
      out[k].words.push_back(synthetic_word(word_offset + k * vocab_per_topic + j));
      out[k].weights.push_back(w);
      w *= decay;
    }
    const double total = std::accumulate(out[k].weights.begin(), out[k].weights.end(), 0.0);
    for (double& x : out[k].weights) x /= total;
  }
  return out;
}

std::vector<double> zipf_weights(std::size_t count, double exponent) {
  std::vector<double> w(count);
  for (std::size_t k = 0; k < count; ++k) w[k] = 1.0 / std::pow(static_cast<double>(k + 1), exponent);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

void set_affinity(GeneratorSpec& spec, const std::vector<double>& popularity, double concentration) {
  const std::size_t K = popularity.size();
  std::array<std::vector<double>, kRegions> joint;
  for (int r = 0; r < kRegions; ++r) {
    joint[static_cast<std::size_t>(r)].assign(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      const bool home = static_cast<int>(k % kRegions) == r;
      joint[static_cast<std::size_t>(r)][k] =
          popularity[k] * (home ? concentration : (1.0 - concentration) / (kRegions - 1));
    }
  }
  double total = 0.0;
  for (const auto& row : joint) total += std::accumulate(row.begin(), row.end(), 0.0);
  for (int r = 0; r < kRegions; ++r) {
    auto& row = joint[static_cast<std::size_t>(r)];
    const double mass = std::accumulate(row.begin(), row.end(), 0.0);
    spec.region_weights[static_cast<std::size_t>(r)] = mass / total;
    if (mass > 0.0) {
      for (double& x : row) x /= mass;
    } else {
      row.assign(K, 1.0 / static_cast<double>(K));
    }
    spec.affinity[static_cast<std::size_t>(r)] = row;
  }
}

SynthCorpus generate(const GeneratorSpec& spec, std::size_t n) {
  spec.validate();
  SynthCorpus out;
  out.raw.reserve(n);
  out.truth.reserve(n);
  const std::size_t K = spec.topics.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t serial = spec.first_index + i;
    Rng rng(mix_keys(spec.seed, serial));
    GroundTruth truth;
    truth.id = spec.id_prefix + std::to_string(serial);

    const auto region = static_cast<int>(rng.categorical(spec.region_weights));
    truth.region = corpus::RegionId::from_index(region + 1);
    const int length =
        spec.min_length + static_cast<int>(rng.below(static_cast<std::size_t>(spec.max_length - spec.min_length + 1)));
    auto hapax = [&](int j) {
      return hapax_word(serial * kMaxTweetWords + static_cast<std::size_t>(j));
    };

    if (rng.uniform() < spec.noise_tweet_prob) {
      std::vector<std::size_t> picks;
      const int max_bg = std::min<int>(spec.noise_max_background, length);
      const int bg = spec.background.empty() || max_bg == 0 ? 0 : 1 + static_cast<int>(rng.below(static_cast<std::size_t>(max_bg)));
      while (static_cast<int>(picks.size()) < bg) {
        const std::size_t w = rng.below(spec.background.size());
        if (std::find(picks.begin(), picks.end(), w) == picks.end()) picks.push_back(w);
      }
      for (int j = 0; j < length; ++j) {
        if (j < bg) {
          truth.tokens.push_back(spec.background[picks[static_cast<std::size_t>(j)]]);
          truth.token_topics.push_back(kBackgroundLabel);
        } else {
          truth.tokens.push_back(hapax(j));
          truth.token_topics.push_back(kHapaxLabel);
        }
      }
      for (std::size_t j = truth.tokens.size(); j > 1; --j) {
        const std::size_t s = rng.below(j);
        std::swap(truth.tokens[j - 1], truth.tokens[s]);
        std::swap(truth.token_topics[j - 1], truth.token_topics[s]);
      }
    } else {
      const std::size_t primary = rng.categorical(spec.affinity[static_cast<std::size_t>(region)]);
      truth.primary_topic = static_cast<int>(primary);
      for (int j = 0; j < length; ++j) {
        const double u = rng.uniform() - spec.primary_prob;
        std::size_t topic = primary;
        if (u >= 0.0 && u < spec.background_prob && !spec.background.empty()) {
          truth.tokens.push_back(spec.background[rng.below(spec.background.size())]);
          truth.token_topics.push_back(kBackgroundLabel);
          continue;
        }
        if (u >= spec.background_prob && u < spec.background_prob + spec.hapax_prob) {
          truth.tokens.push_back(hapax(j));
          truth.token_topics.push_back(kHapaxLabel);
          continue;
        }
        if (u >= spec.background_prob + spec.hapax_prob && K > 1) {
          topic = rng.below(K - 1);
          if (topic >= primary) ++topic;
        }
        const auto& t = spec.topics[topic];
        truth.tokens.push_back(t.words[rng.categorical(t.weights)]);
        truth.token_topics.push_back(static_cast<int>(topic));
      }
    }

    corpus::RawTweet raw;
    raw.id = truth.id;
    raw.timestamp = spec.start_time + static_cast<std::int64_t>(serial) * spec.interval;
    const auto cell = corpus::region_bounds(truth.region, spec.box);
    raw.lat = cell.lat_min + (cell.lat_max - cell.lat_min) * (0.05 + 0.9 * rng.uniform());
    raw.lon = cell.lon_min + (cell.lon_max - cell.lon_min) * (0.05 + 0.9 * rng.uniform());
    if (rng.uniform() < spec.media_prob) {
      const int items = rng.uniform() < 0.1 ? 2 : 1;
      for (int m = 0; m < items; ++m) {
        corpus::MediaRef ref;
        ref.kind = rng.uniform() < spec.video_prob ? corpus::MediaKind::video : corpus::MediaKind::image;
        ref.size_bytes = ref.kind == corpus::MediaKind::video
                             ? rng.log_uniform(spec.video_bytes_min, spec.video_bytes_max)
                             : rng.log_uniform(spec.image_bytes_min, spec.image_bytes_max);
        ref.url = "https://media.example.org/" + truth.id + "/" + std::to_string(m) +
                  (ref.kind == corpus::MediaKind::video ? ".mp4" : ".jpg");
        raw.media.push_back(std::move(ref));
      }
    }
    raw.text = decorate(truth.tokens, raw.media, rng);
    out.raw.push_back(std::move(raw));
    out.truth.push_back(std::move(truth));
  }
  return out;
}

void write_truth_jsonl(std::ostream& out, const std::vector<GroundTruth>& truth) {
  for (const auto& t : truth) {
    nlohmann::json j = {{"id", t.id},
                        {"primary_topic", t.primary_topic},
                        {"region", t.region.index()},
                        {"tokens", t.tokens},
                        {"token_topics", t.token_topics}};
    out << j.dump() << '\n';
  }
}

GeneratorSpec default_spec(std::size_t topics, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.topics = make_topics(topics, 10, 0.8);
  set_affinity(spec, zipf_weights(topics, 1.0), 0.8);
  for (std::size_t i = 0; i < 30; ++i) spec.background.push_back(synthetic_word(200'000 + i));
  spec.seed = seed;
  return spec;
}

CachingScenario caching_scenario(const CachingScenarioOptions& o) {
  if (o.test_active_topics == 0 || o.test_active_topics > o.topics) {
    throw ConfigError("active test topics must be between 1 and the topic count");
  }
  GeneratorSpec train = default_spec(o.topics, o.seed);
  train.min_length = 6;
  train.max_length = 14;
  train.primary_prob = 0.8;
  train.background_prob = 0.12;
  train.hapax_prob = 0.03;
  train.noise_tweet_prob = 0.3;
  train.media_prob = 0.3;
  train.id_prefix = "c";
  const auto popularity = zipf_weights(o.topics, 1.0);

  // Short-lived topics with their own words, no background vocabulary.
  GeneratorSpec burst = train;
  burst.topics = make_topics(5, 10, 0.8, 100'000);
  set_affinity(burst, zipf_weights(5, 0.0), 0.8);
  burst.background_prob = 0.0;
  burst.noise_tweet_prob = 0.0;
  burst.primary_prob = 0.5;
  burst.hapax_prob = 0.5;
  burst.first_index = o.train_tweets;

  // Only the most popular topics stay active.
  GeneratorSpec test = train;
  std::vector<double> active(popularity);
  for (std::size_t k = o.test_active_topics; k < active.size(); ++k) active[k] = 0.0;
  const double mass = std::accumulate(active.begin(), active.end(), 0.0);
  for (double& x : active) x /= mass;
  set_affinity(test, active, 0.8);
  test.first_index = o.train_tweets + o.burst_tweets;

  CachingScenario s;
  s.planted_topics = o.topics;
  s.corpus = generate(train, o.train_tweets);
  for (auto* part : {&burst, &test}) {
    SynthCorpus c = generate(*part, part == &burst ? o.burst_tweets : o.test_tweets);
    s.corpus.raw.insert(s.corpus.raw.end(), c.raw.begin(), c.raw.end());
    s.corpus.truth.insert(s.corpus.truth.end(), c.truth.begin(), c.truth.end());
  }
  s.split_time = train.start_time + static_cast<std::int64_t>(test.first_index) * train.interval;
  return s;
}

}  // namespace tac::synth

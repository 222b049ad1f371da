#include "tac/synth/oracle.hpp"

#include <cstdint>
#include <string>

namespace tac::synth {
namespace {

// Deliberately naive: no indexes, no sets, nothing from cachesim.
bool tweet_has(const corpus::Tweet& tweet, const std::string& word) {
  for (const auto& t : tweet.tokens) {
    if (t == word) return true;
  }
  return false;
}

bool topic_matches(const cachesim::Topic& topic, const corpus::Tweet& tweet) {
  std::size_t shared = 0;
  for (const auto& w : topic.words) {
    if (tweet_has(tweet, w)) ++shared;
  }
  const std::size_t need = topic.words.size() < 3 ? topic.words.size() : 3;
  return need > 0 && shared >= need;
}

struct Item {
  std::string url;
  std::uint64_t bytes;
};

bool listed(const std::vector<Item>& items, const std::string& url) {
  for (const auto& i : items) {
    if (i.url == url) return true;
  }
  return false;
}

std::uint64_t first_size(const std::vector<corpus::Tweet>& tweets, const std::string& url) {
  for (const auto& t : tweets) {
    for (const auto& m : t.media) {
      if (m.url == url) return m.size_bytes;
    }
  }
  return 0;
}

std::uint64_t total_bytes(const std::vector<Item>& items) {
  std::uint64_t s = 0;
  for (const auto& i : items) s += i.bytes;
  return s;
}

double fraction(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

cachesim::MetricsReport oracle_metrics(const std::vector<cachesim::Topic>& topics,
                                       const std::vector<corpus::Tweet>& train,
                                       const std::vector<corpus::Tweet>& test) {
  cachesim::MetricsReport r;

  std::uint64_t tweets_hit = 0;
  for (const auto& tweet : test) {
    bool any = false;
    for (const auto& topic : topics) any = any || topic_matches(topic, tweet);
    if (any) ++tweets_hit;
  }
  std::uint64_t topics_hit = 0;
  for (const auto& topic : topics) {
    bool any = false;
    for (const auto& tweet : test) any = any || topic_matches(topic, tweet);
    if (any) ++topics_hit;
  }

  std::vector<Item> train_media;
  std::vector<Item> cached;
  for (const auto& tweet : train) {
    for (const auto& m : tweet.media) {
      if (!listed(train_media, m.url)) train_media.push_back({m.url, first_size(train, m.url)});
    }
  }
  for (const auto& topic : topics) {
    for (const auto& tweet : train) {
      if (!topic_matches(topic, tweet)) continue;
      for (const auto& m : tweet.media) {
        if (m.size_bytes > 0 && !listed(cached, m.url)) cached.push_back({m.url, first_size(train, m.url)});
      }
    }
  }

  std::vector<Item> test_media;
  std::vector<Item> hit_media;
  for (const auto& tweet : test) {
    bool matched = false;
    for (const auto& topic : topics) matched = matched || topic_matches(topic, tweet);
    for (const auto& m : tweet.media) {
      if (!listed(test_media, m.url)) test_media.push_back({m.url, first_size(test, m.url)});
      if (matched && !listed(hit_media, m.url)) hit_media.push_back({m.url, first_size(test, m.url)});
    }
  }

  r.tweet_hit_rate = fraction(tweets_hit, test.size());
  r.tweet_hit_portion = fraction(topics_hit, topics.size());
  r.cache_portion = fraction(total_bytes(cached), total_bytes(train_media));
  r.hit_cache_portion = fraction(total_bytes(hit_media), total_bytes(test_media));
  r.no_test_tweets = test.empty();
  r.no_topics = topics.empty();
  r.no_train_media = total_bytes(train_media) == 0;
  r.no_test_media = total_bytes(test_media) == 0;
  return r;
}

}  // namespace tac::synth

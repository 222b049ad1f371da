#include "tac/cachesim/selection.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "tac/common/errors.hpp"

namespace tac::cachesim {

const char* to_string(Method method) {
  switch (method) {
    case Method::ml: return "ml";
    case Method::lfu: return "lfu";
    case Method::lru: return "lru";
  }
  return "?";
}

Method method_from_string(const std::string& text) {
  if (text == "ml") return Method::ml;
  if (text == "lfu") return Method::lfu;
  if (text == "lru") return Method::lru;
  throw ConfigError("unknown method '" + text + "' (expected ml, lfu or lru)");
}

std::vector<Topic> select_topics_ml(const std::vector<Topic>& topics,
                                    const std::vector<corpus::Tweet>& train, std::size_t n) {
  const auto matched = match_all(topics, train);
  std::vector<std::size_t> order(topics.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return matched[a].size() > matched[b].size(); });
  order.resize(std::min(n, order.size()));
  std::vector<Topic> out;
  for (std::size_t k : order) {
    Topic t = topics[k];
    t.popularity = matched[k].size();
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

std::map<std::string, std::uint64_t> word_counts(const std::vector<corpus::Tweet>& tweets) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& t : tweets) {
    for (const auto& w : t.tokens) ++counts[w];
  }
  return counts;
}

Topic keyword_topic(const char* method, const std::string& word, std::uint64_t count) {
  return Topic{std::string(method) + ":" + word, {word}, count};
}

}  // namespace

std::vector<Topic> select_keywords_lfu(const std::vector<corpus::Tweet>& train, std::size_t n) {
  const auto counts = word_counts(train);
  std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(), counts.end());
  // std::map iteration is lexicographic, so a stable sort keeps that as the tiebreak.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  ranked.resize(std::min(n, ranked.size()));
  std::vector<Topic> out;
  for (const auto& [word, count] : ranked) out.push_back(keyword_topic("lfu", word, count));
  return out;
}

std::vector<Topic> select_keywords_lru(const std::vector<corpus::Tweet>& train, std::size_t n) {
  const auto counts = word_counts(train);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return train[a].timestamp < train[b].timestamp; });
  std::vector<Topic> out;
  std::unordered_set<std::string> seen;
  for (auto it = order.rbegin(); it != order.rend() && out.size() < n; ++it) {
    const auto& tokens = train[*it].tokens;
    for (auto w = tokens.rbegin(); w != tokens.rend() && out.size() < n; ++w) {
      if (seen.insert(*w).second) out.push_back(keyword_topic("lru", *w, counts.at(*w)));
    }
  }
  return out;
}

}  // namespace tac::cachesim

#pragma once

#include <cstddef>
#include <vector>

#include "tac/cachesim/topic.hpp"
#include "tac/corpus/types.hpp"

namespace tac::cachesim {

enum class Method { ml, lfu, lru };

const char* to_string(Method method);
Method method_from_string(const std::string& text);  // throws ConfigError

/// The `n` topics matching the most training tweets, ties by input order.
/// Popularity is set to the match count.
std::vector<Topic> select_topics_ml(const std::vector<Topic>& topics,
                                    const std::vector<corpus::Tweet>& train, std::size_t n);

/// The `n` most frequent training words as single-word topics, ties
/// lexicographic. Popularity is the word count.
std::vector<Topic> select_keywords_lfu(const std::vector<corpus::Tweet>& train, std::size_t n);

/// The `n` distinct words seen most recently, latest first. Tweets are
/// ordered by timestamp (stable), tokens by position within a tweet.
/// Popularity is the word count.
std::vector<Topic> select_keywords_lru(const std::vector<corpus::Tweet>& train, std::size_t n);

}  // namespace tac::cachesim

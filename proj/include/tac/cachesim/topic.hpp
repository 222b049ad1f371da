#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tac/corpus/types.hpp"

namespace tac::cachesim {

struct Topic {
  std::string id;
  std::vector<std::string> words;  // distinct
  std::uint64_t popularity = 0;
};

inline constexpr std::size_t kMatchWords = 3;

// Shared words needed for a match: 3, or every word of a shorter topic
// (single-keyword baseline topics match on their one word).
std::size_t match_threshold(const Topic& topic);

bool match(const Topic& topic, const corpus::Tweet& tweet);

/// Matched tweet indices for every topic, computed through an inverted
/// index over the tweets. Entry k is sorted ascending.
std::vector<std::vector<std::size_t>> match_all(const std::vector<Topic>& topics,
                                                const std::vector<corpus::Tweet>& tweets);

// Topics file: one topic per line, id followed by its words, whitespace
// separated. Blank lines are skipped.
std::vector<Topic> read_topics(std::istream& in);
std::vector<Topic> read_topics_file(const std::filesystem::path& path);  // throws DataError
void write_topics(std::ostream& out, const std::vector<Topic>& topics);

}  // namespace tac::cachesim

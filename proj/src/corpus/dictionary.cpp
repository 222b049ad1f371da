#include "tac/corpus/dictionary.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tac/common/errors.hpp"

namespace tac::corpus {
namespace {

void check_capacity(std::size_t capacity) {
  if (capacity > Dictionary::kMaxCapacity) {
    throw ConfigError("dictionary capacity " + std::to_string(capacity) +
                      " would collide with reserved geo-token indices");
  }
}

}  // namespace

Dictionary Dictionary::build(const std::vector<std::vector<std::string>>& documents,
                             std::size_t capacity) {
  check_capacity(capacity);
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : documents) {
    for (const auto& token : doc) ++counts[token];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  // `counts` is already lexicographic, so a stable sort on frequency keeps
  // the tiebreak.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > capacity) ranked.resize(capacity);

  std::vector<std::string> words;
  words.reserve(ranked.size());
  for (auto& [word, count] : ranked) words.push_back(word);
  return from_words(std::move(words), capacity);
}

Dictionary Dictionary::build(const std::vector<Tweet>& tweets, std::size_t capacity) {
  std::vector<std::vector<std::string>> documents;
  documents.reserve(tweets.size());
  for (const auto& tweet : tweets) documents.push_back(tweet.tokens);
  return build(documents, capacity);
}

Dictionary Dictionary::from_words(std::vector<std::string> words, std::size_t capacity) {
  check_capacity(capacity);
  if (words.size() > capacity) throw DataError("dictionary word list exceeds its capacity");
  Dictionary dict;
  dict.capacity_ = capacity;
  dict.words_ = std::move(words);
  dict.index_.reserve(dict.words_.size());
  for (std::size_t i = 0; i < dict.words_.size(); ++i) {
    if (!dict.index_.emplace(dict.words_[i], static_cast<int>(i) + 1).second) {
      throw DataError("duplicate dictionary word '" + dict.words_[i] + "'");
    }
  }
  return dict;
}

int Dictionary::lookup(const std::string& word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? kUnk : it->second;
}

const std::string& Dictionary::word(int index) const {
  if (index < 1 || static_cast<std::size_t>(index) > words_.size()) {
    throw std::out_of_range("no dictionary word at index " + std::to_string(index));
  }
  return words_[static_cast<std::size_t>(index) - 1];
}

std::vector<int> Dictionary::encode(const std::vector<std::string>& tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) out.push_back(lookup(token));
  return out;
}

}  // namespace tac::corpus

#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "tac/corpus/types.hpp"

namespace tac::corpus {

/// Bidirectional word <-> index map.
///
/// Index 0 is UNK. Ordinary words occupy the dense range [1, size()], ranked
/// by descending corpus frequency with lexicographic tie-breaks, so the
/// table depends only on the multiset of tokens and not on record order.
/// Capacity may not exceed 81111 so that words never reach the reserved
/// geo-token indices.
class Dictionary {
 public:
  static constexpr int kUnk = 0;
  static constexpr std::size_t kDefaultCapacity = 60000;
  static constexpr std::size_t kMaxCapacity = 81111;
  // Output width of the geo-aware model: every word plus the geo tokens.
  static constexpr std::size_t kGeoVocabSize = 92000;

  Dictionary() = default;

  static Dictionary build(const std::vector<Tweet>& tweets, std::size_t capacity = kDefaultCapacity);
  static Dictionary build(const std::vector<std::vector<std::string>>& documents,
                          std::size_t capacity = kDefaultCapacity);
  // Rebuilds from an index-ordered word list (position i -> index i + 1).
  static Dictionary from_words(std::vector<std::string> words, std::size_t capacity);

  int lookup(const std::string& word) const;  // kUnk when absent
  const std::string& word(int index) const;    // throws std::out_of_range
  std::vector<int> encode(const std::vector<std::string>& tokens) const;

  // Number of ordinary words admitted.
  std::size_t size() const { return words_.size(); }
  std::size_t capacity() const { return capacity_; }
  // Output width of a plain model over this table: words plus UNK.
  std::size_t plain_vocab_size() const { return capacity_ + 1; }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::size_t capacity_ = kDefaultCapacity;
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace tac::corpus

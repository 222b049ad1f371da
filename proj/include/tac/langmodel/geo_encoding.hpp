#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tac/corpus/dictionary.hpp"
#include "tac/corpus/types.hpp"

namespace tac::langmodel {

inline constexpr int kTweetWords = 20;
inline constexpr int kTweetSlots = kTweetWords + 2;

// 20 word indices (UNK-padded or truncated) followed by the latitude-band
// and longitude-band tokens.
using TweetVector = std::array<int, kTweetSlots>;

TweetVector encode_tweet(const corpus::Tweet& tweet, const corpus::Dictionary& dict);

struct GeoStream {
  std::vector<int> tokens;           // 22 tokens per tweet, chronological
  std::vector<std::size_t> blocks;   // start offset of every m-tweet input vector
};

GeoStream geo_stream(const std::vector<TweetVector>& tweets, int tweets_per_block = 5);

// Dictionary indices of all tokens, tweets concatenated in order.
std::vector<int> plain_stream(const std::vector<corpus::Tweet>& tweets, const corpus::Dictionary& dict);

}  // namespace tac::langmodel

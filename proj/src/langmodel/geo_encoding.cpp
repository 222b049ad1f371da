#include "tac/langmodel/geo_encoding.hpp"

#include <algorithm>

#include "tac/common/errors.hpp"
#include "tac/corpus/region.hpp"

namespace tac::langmodel {

TweetVector encode_tweet(const corpus::Tweet& tweet, const corpus::Dictionary& dict) {
  TweetVector v;
  v.fill(corpus::Dictionary::kUnk);
  const std::size_t n = std::min<std::size_t>(tweet.tokens.size(), kTweetWords);
  for (std::size_t i = 0; i < n; ++i) v[i] = dict.lookup(tweet.tokens[i]);
  const auto geo = corpus::geo_tokens(tweet.region);
  v[kTweetWords] = geo.lat_token;
  v[kTweetWords + 1] = geo.lon_token;
  return v;
}

GeoStream geo_stream(const std::vector<TweetVector>& tweets, int tweets_per_block) {
  if (tweets_per_block < 1) throw ConfigError("tweets per input vector must be positive");
  GeoStream out;
  out.tokens.reserve(tweets.size() * kTweetSlots);
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    if (i % static_cast<std::size_t>(tweets_per_block) == 0) out.blocks.push_back(out.tokens.size());
    out.tokens.insert(out.tokens.end(), tweets[i].begin(), tweets[i].end());
  }
  return out;
}

std::vector<int> plain_stream(const std::vector<corpus::Tweet>& tweets, const corpus::Dictionary& dict) {
  std::vector<int> out;
  for (const auto& tweet : tweets) {
    for (const auto& token : tweet.tokens) out.push_back(dict.lookup(token));
  }
  return out;
}

}  // namespace tac::langmodel

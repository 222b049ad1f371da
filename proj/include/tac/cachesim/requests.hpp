#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tac/cachesim/cache.hpp"
#include "tac/cachesim/topic.hpp"
#include "tac/corpus/types.hpp"

namespace tac::cachesim {

// One observed request: the media it carried and the topics it hit.
struct Request {
  std::string tweet_id;
  std::vector<corpus::MediaRef> media;
  std::vector<std::string> topic_hits;
};

// Requests for a tweet stream, hits found by the match rule.
std::vector<Request> requests_from_tweets(const std::vector<corpus::Tweet>& tweets,
                                          const std::vector<Topic>& topics);

struct ChurnEvent {
  std::size_t request = 0;  // index into the stream
  std::string list;         // "topics" or the topic id owning an object list
  std::string action;       // "admit" or "evict"
  std::string key;
  std::uint64_t popularity = 0;

  friend bool operator==(const ChurnEvent&, const ChurnEvent&) = default;
};

/// Replays requests against a cache. Each hit increments the topic's
/// running popularity, which is then offered to the topics list: listed
/// topics update in place, new ones may evict. For every hit topic that is
/// listed afterwards, each non-empty media item increments its usage under
/// that topic and is offered to the topic's object list. An evicted topic
/// drops its object list. Running counts start from the list entries.
class RequestSimulator {
 public:
  explicit RequestSimulator(CacheState& cache);

  void process(const Request& request);
  void run(const std::vector<Request>& requests);

  std::uint64_t popularity(const std::string& topic) const;
  const std::vector<ChurnEvent>& churn() const { return churn_; }

 private:
  PriorList& objects_of(const std::string& topic);
  void drop_topic(const std::string& topic);

  CacheState& cache_;
  std::size_t next_request_ = 0;
  std::map<std::string, std::uint64_t> popularity_;
  std::map<std::string, std::map<std::string, std::uint64_t>> usage_;
  std::map<std::string, corpus::MediaRef> media_;
  std::vector<ChurnEvent> churn_;
};

std::vector<ChurnEvent> simulate_requests(CacheState& cache, const std::vector<Request>& requests);

void write_churn_jsonl(std::ostream& out, const std::vector<ChurnEvent>& churn);

}  // namespace tac::cachesim

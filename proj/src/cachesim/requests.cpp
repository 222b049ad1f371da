#include "tac/cachesim/requests.hpp"

#include <json.hpp>
#include <ostream>

namespace tac::cachesim {

std::vector<Request> requests_from_tweets(const std::vector<corpus::Tweet>& tweets,
                                          const std::vector<Topic>& topics) {
  std::vector<Request> out(tweets.size());
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    out[i].tweet_id = tweets[i].id;
    out[i].media = tweets[i].media;
  }
  const auto matched = match_all(topics, tweets);
  for (std::size_t k = 0; k < topics.size(); ++k) {
    for (std::size_t i : matched[k]) out[i].topic_hits.push_back(topics[k].id);
  }
  return out;
}

RequestSimulator::RequestSimulator(CacheState& cache) : cache_(cache) {
  for (const auto& e : cache_.topics_pl.entries()) popularity_[e.key] = e.popularity;
  for (const auto& [topic, pl] : cache_.object_pls) {
    for (const auto& e : pl.entries()) usage_[topic][e.key] = e.popularity;
  }
  media_ = cache_.cached;
}

std::uint64_t RequestSimulator::popularity(const std::string& topic) const {
  const auto it = popularity_.find(topic);
  return it == popularity_.end() ? 0 : it->second;
}

PriorList& RequestSimulator::objects_of(const std::string& topic) {
  return cache_.object_pls.try_emplace(topic, cache_.options.objects_capacity).first->second;
}

void RequestSimulator::drop_topic(const std::string& topic) {
  const auto it = cache_.object_pls.find(topic);
  if (it == cache_.object_pls.end()) return;
  for (const auto& e : it->second.entries()) cache_.release_object(e.key);
  cache_.object_pls.erase(it);
}

void RequestSimulator::process(const Request& request) {
  const std::size_t index = next_request_++;
  for (const auto& m : request.media) media_.try_emplace(m.url, m);
  for (const auto& topic : request.topic_hits) {
    const std::uint64_t pop = ++popularity_[topic];
    const auto r = cache_.topics_pl.offer(topic, pop);
    if (r.evicted) {
      churn_.push_back({index, "topics", "evict", r.evicted->key, r.evicted->popularity});
      drop_topic(r.evicted->key);
    }
    if (r.admitted) churn_.push_back({index, "topics", "admit", topic, pop});
    if (!cache_.topics_pl.contains(topic)) continue;

    PriorList& objects = objects_of(topic);
    for (const auto& m : request.media) {
      if (m.size_bytes == 0) continue;
      const std::uint64_t use = ++usage_[topic][m.url];
      const auto o = objects.offer(m.url, use);
      if (o.evicted) {
        churn_.push_back({index, topic, "evict", o.evicted->key, o.evicted->popularity});
        cache_.release_object(o.evicted->key);
      }
      if (o.admitted) {
        churn_.push_back({index, topic, "admit", m.url, use});
        cache_.hold_object(media_.at(m.url));
      }
    }
  }
}

void RequestSimulator::run(const std::vector<Request>& requests) {
  for (const auto& r : requests) process(r);
}

std::vector<ChurnEvent> simulate_requests(CacheState& cache, const std::vector<Request>& requests) {
  RequestSimulator sim(cache);
  sim.run(requests);
  return sim.churn();
}

void write_churn_jsonl(std::ostream& out, const std::vector<ChurnEvent>& churn) {
  for (const auto& e : churn) {
    nlohmann::json j = {{"request", e.request}, {"list", e.list}, {"action", e.action},
                        {"key", e.key}, {"popularity", e.popularity}};
    out << j.dump() << '\n';
  }
}

}  // namespace tac::cachesim

#include "tac/cachesim/cache.hpp"

#include <stdexcept>

namespace tac::cachesim {

void CacheState::hold_object(const corpus::MediaRef& media) {
  if (media.size_bytes == 0) return;
  if (holders_[media.url]++ == 0) {
    cached.emplace(media.url, media);
    cached_bytes += media.size_bytes;
  }
}

void CacheState::release_object(const std::string& url) {
  const auto it = holders_.find(url);
  if (it == holders_.end()) return;
  if (--it->second == 0) {
    holders_.erase(it);
    const auto c = cached.find(url);
    cached_bytes -= c->second.size_bytes;
    cached.erase(c);
  }
}

void CacheState::check_invariants() const {
  std::uint64_t bytes = 0;
  for (const auto& [url, media] : cached) {
    bytes += media.size_bytes;
    bool held = false;
    for (const auto& topic : topics_pl.entries()) {
      const auto pl = object_pls.find(topic.key);
      held = held || (pl != object_pls.end() && pl->second.contains(url));
    }
    if (!held) throw std::logic_error("cached object " + url + " belongs to no listed topic");
  }
  if (bytes != cached_bytes) throw std::logic_error("cached_bytes does not match the cached set");
  for (const auto& [topic, pl] : object_pls) {
    if (!topics_pl.contains(topic)) throw std::logic_error("object list for unlisted topic " + topic);
    for (const auto& e : pl.entries()) {
      if (!cached.contains(e.key)) throw std::logic_error("listed object " + e.key + " is not cached");
    }
  }
}

CacheState build_cache(const std::vector<Topic>& topics, const std::vector<corpus::Tweet>& train,
                       const CacheOptions& options) {
  CacheState cache(options);
  const auto matched = match_all(topics, train);
  for (std::size_t k = 0; k < topics.size(); ++k) {
    const auto r = cache.topics_pl.offer(topics[k].id, matched[k].size());
    if (r.evicted) cache.object_pls.erase(r.evicted->key);
    if (r.admitted || r.updated) cache.object_pls.try_emplace(topics[k].id, options.objects_capacity);
  }

  std::map<std::string, corpus::MediaRef> catalog;
  for (std::size_t k = 0; k < topics.size(); ++k) {
    const auto pl = cache.object_pls.find(topics[k].id);
    if (pl == cache.object_pls.end()) continue;
    // Match frequency per object, offered in first-seen order.
    std::vector<std::string> order;
    std::map<std::string, std::uint64_t> freq;
    for (std::size_t i : matched[k]) {
      for (const auto& m : train[i].media) {
        if (m.size_bytes == 0) continue;
        catalog.try_emplace(m.url, m);
        if (freq[m.url]++ == 0) order.push_back(m.url);
      }
    }
    for (const auto& url : order) pl->second.offer(url, freq[url]);
  }
  for (const auto& [topic, pl] : cache.object_pls) {
    for (const auto& e : pl.entries()) cache.hold_object(catalog.at(e.key));
  }
  return cache;
}

}  // namespace tac::cachesim

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tac/cachesim/prior_list.hpp"
#include "tac/cachesim/topic.hpp"
#include "tac/corpus/types.hpp"

namespace tac::cachesim {

struct CacheOptions {
  std::size_t topics_capacity = 0;   // 0 = unbounded
  std::size_t objects_capacity = 0;  // per topic; 0 = unbounded
};

/// Topics Prior List, one object Prior List per admitted topic, and the
/// media currently cached: the union of the object lists. Media are
/// identified by URL; zero-size media are never cached.
struct CacheState {
  CacheOptions options;
  PriorList topics_pl;
  std::map<std::string, PriorList> object_pls;  // by topic id
  std::map<std::string, corpus::MediaRef> cached;
  std::uint64_t cached_bytes = 0;

  CacheState() = default;
  explicit CacheState(const CacheOptions& opts)
      : options(opts), topics_pl(opts.topics_capacity) {}

  bool is_cached(const std::string& url) const { return cached.contains(url); }

  // Reference counting over object lists; the first holder caches the
  // object, the last release drops it.
  void hold_object(const corpus::MediaRef& media);
  void release_object(const std::string& url);

  // Throws std::logic_error when cached_bytes or the cached set disagree
  // with the object lists.
  void check_invariants() const;

 private:
  std::map<std::string, std::size_t> holders_;
};

/// Offers every topic (in order) to the topics list with its training
/// match count as popularity, then ranks each admitted topic's media by
/// the number of matched training tweets carrying them.
CacheState build_cache(const std::vector<Topic>& topics, const std::vector<corpus::Tweet>& train,
                       const CacheOptions& options = {});

}  // namespace tac::cachesim

#pragma once

// Reference Prior List: an unsorted vector scanned on every offer.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tac/cachesim/prior_list.hpp"

namespace tac::testing {

class ReferencePriorList {
 public:
  explicit ReferencePriorList(std::size_t capacity) : capacity_(capacity) {}

  void offer(const std::string& key, std::uint64_t popularity) {
    for (auto& e : items_) {
      if (e.key == key) {
        e.popularity = popularity;
        return;
      }
    }
    if (capacity_ == 0 || items_.size() < capacity_) {
      items_.push_back({key, popularity, seq_++});
      return;
    }
    // Victim: lowest popularity, latest insertion among equals.
    std::size_t victim = 0;
    for (std::size_t i = 1; i < items_.size(); ++i) {
      const auto& a = items_[i];
      const auto& v = items_[victim];
      if (a.popularity < v.popularity || (a.popularity == v.popularity && a.seq > v.seq)) victim = i;
    }
    if (popularity > items_[victim].popularity) items_[victim] = {key, popularity, seq_++};
  }

  std::vector<cachesim::PriorList::Entry> ranked() const {
    auto out = items_;
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.popularity != b.popularity ? a.popularity > b.popularity : a.seq < b.seq;
    });
    return out;
  }

 private:
  std::size_t capacity_;
  std::uint64_t seq_ = 0;
  std::vector<cachesim::PriorList::Entry> items_;
};

}  // namespace tac::testing

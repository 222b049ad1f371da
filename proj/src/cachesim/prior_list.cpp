#include "tac/cachesim/prior_list.hpp"

#include <algorithm>

namespace tac::cachesim {
namespace {

bool ranks_before(const PriorList::Entry& a, const PriorList::Entry& b) {
  return a.popularity > b.popularity || (a.popularity == b.popularity && a.seq < b.seq);
}

}  // namespace

void PriorList::place(Entry entry) {
  const auto pos = std::upper_bound(entries_.begin(), entries_.end(), entry, ranks_before);
  entries_.insert(pos, std::move(entry));
}

PriorList::OfferResult PriorList::offer(const std::string& key, std::uint64_t popularity) {
  OfferResult result;
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const Entry& e) { return e.key == key; });
  if (it != entries_.end()) {
    Entry entry = *it;
    entries_.erase(it);
    entry.popularity = popularity;
    place(std::move(entry));
    result.updated = true;
    return result;
  }
  if (full()) {
    if (popularity <= entries_.back().popularity) return result;
    result.evicted = entries_.back();
    entries_.pop_back();
  }
  place(Entry{key, popularity, next_seq_++});
  result.admitted = true;
  return result;
}

bool PriorList::erase(const std::string& key) {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const Entry& e) { return e.key == key; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

bool PriorList::contains(const std::string& key) const { return popularity(key).has_value(); }

std::optional<std::uint64_t> PriorList::popularity(const std::string& key) const {
  for (const auto& e : entries_) {
    if (e.key == key) return e.popularity;
  }
  return std::nullopt;
}

std::vector<std::string> PriorList::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.key);
  return out;
}

}  // namespace tac::cachesim

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tac::cachesim {

/// Popularity-ranked list with a capacity bound.
///
/// Entries are kept sorted by popularity descending, then by insertion
/// order ascending, so the last entry is the only eviction candidate. A
/// capacity of 0 means unbounded.
class PriorList {
 public:
  struct Entry {
    std::string key;
    std::uint64_t popularity = 0;
    std::uint64_t seq = 0;  // insertion stamp

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  struct OfferResult {
    bool admitted = false;  // newly inserted
    bool updated = false;   // already present, popularity replaced
    std::optional<Entry> evicted;
  };

  explicit PriorList(std::size_t capacity = 0) : capacity_(capacity) {}

  /// Present keys take the new popularity and keep their insertion stamp.
  /// Otherwise the key is inserted when there is room, or when it strictly
  /// exceeds the popularity of the last entry, which is then evicted.
  OfferResult offer(const std::string& key, std::uint64_t popularity);
  bool erase(const std::string& key);

  bool contains(const std::string& key) const;
  std::optional<std::uint64_t> popularity(const std::string& key) const;
  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<std::string> keys() const;
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool full() const { return capacity_ != 0 && entries_.size() >= capacity_; }

 private:
  void place(Entry entry);

  std::size_t capacity_;
  std::uint64_t next_seq_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace tac::cachesim

#pragma once

#include <cstddef>
#include <vector>

namespace tac::langmodel {

// One training step: `batch_size` aligned windows of `num_steps` tokens.
// Element (b, t) lives at b * num_steps + t.
struct Batch {
  int num_steps = 0;
  int batch_size = 0;
  std::vector<int> inputs;
  std::vector<int> targets;

  int input(int b, int t) const { return inputs[static_cast<std::size_t>(b * num_steps + t)]; }
  int target(int b, int t) const { return targets[static_cast<std::size_t>(b * num_steps + t)]; }
};

/// Sliding-window batches over a token stream.
///
/// The stream is cut into `batch_size` contiguous partitions (the tail that
/// does not divide evenly is dropped). Within a partition, window `w` covers
/// positions [w*skip, w*skip + num_steps) and its target is the same range
/// shifted by one. Batch `w` stacks window `w` of every partition, so the
/// rows of consecutive batches continue the same partition in order.
class SkipGramBatcher {
 public:
  // Throws DataError when a partition is not longer than num_steps.
  SkipGramBatcher(std::vector<int> stream, int num_steps, int batch_size, int skip = 1);

  std::size_t size() const { return windows_per_partition_; }
  Batch operator[](std::size_t index) const;

  int num_steps() const { return num_steps_; }
  int batch_size() const { return batch_size_; }
  int skip() const { return skip_; }
  std::size_t partition_length() const { return partition_length_; }
  std::size_t target_count() const { return windows_per_partition_ * batch_size_ * num_steps_; }

 private:
  std::vector<int> stream_;
  int num_steps_;
  int batch_size_;
  int skip_;
  std::size_t partition_length_ = 0;
  std::size_t windows_per_partition_ = 0;
};

}  // namespace tac::langmodel

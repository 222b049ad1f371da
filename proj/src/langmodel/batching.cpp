#include "tac/langmodel/batching.hpp"

#include <string>

#include "tac/common/errors.hpp"

namespace tac::langmodel {

SkipGramBatcher::SkipGramBatcher(std::vector<int> stream, int num_steps, int batch_size, int skip)
    : stream_(std::move(stream)), num_steps_(num_steps), batch_size_(batch_size), skip_(skip) {
  if (num_steps < 1 || batch_size < 1 || skip < 1) {
    throw ConfigError("num_steps, batch_size and skip must be positive");
  }
  partition_length_ = stream_.size() / static_cast<std::size_t>(batch_size);
  const auto steps = static_cast<std::size_t>(num_steps);
  if (partition_length_ <= steps) {
    throw DataError("token stream of length " + std::to_string(stream_.size()) +
                    " too short for " + std::to_string(batch_size) + " partitions of " +
                    std::to_string(num_steps) + "-step windows");
  }
  // A window starting at s needs targets up to s + num_steps <= length - 1.
  windows_per_partition_ = (partition_length_ - steps - 1) / static_cast<std::size_t>(skip) + 1;
}

Batch SkipGramBatcher::operator[](std::size_t index) const {
  Batch batch;
  batch.num_steps = num_steps_;
  batch.batch_size = batch_size_;
  batch.inputs.resize(static_cast<std::size_t>(num_steps_ * batch_size_));
  batch.targets.resize(batch.inputs.size());
  const std::size_t offset = index * static_cast<std::size_t>(skip_);
  for (int b = 0; b < batch_size_; ++b) {
    const std::size_t base = static_cast<std::size_t>(b) * partition_length_ + offset;
    for (int t = 0; t < num_steps_; ++t) {
      const auto slot = static_cast<std::size_t>(b * num_steps_ + t);
      batch.inputs[slot] = stream_[base + static_cast<std::size_t>(t)];
      batch.targets[slot] = stream_[base + static_cast<std::size_t>(t) + 1];
    }
  }
  return batch;
}

}  // namespace tac::langmodel

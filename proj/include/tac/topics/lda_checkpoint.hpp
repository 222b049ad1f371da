#pragma once

#include <iosfwd>
#include <string>

#include "tac/topics/lda.hpp"

namespace tac::topics {

// Text checkpoint, format tag "TACLDA 1": config, per-document words with
// their assignments, and the doc-topic / topic-word count matrices. Counts
// are cross-checked against the assignments on load.
void save_lda_checkpoint(std::ostream& out, const TopicModel& model);
void save_lda_checkpoint(const std::string& path, const TopicModel& model);
TopicModel load_lda_checkpoint(std::istream& in);  // throws DataError
TopicModel load_lda_checkpoint(const std::string& path);

}  // namespace tac::topics

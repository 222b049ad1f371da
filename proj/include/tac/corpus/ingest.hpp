#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tac/corpus/text_cleaner.hpp"
#include "tac/corpus/types.hpp"

namespace tac::corpus {

struct IngestOptions {
  BoundingBox box;
  const StopwordSet* stopwords = nullptr;  // null selects default_stopwords()
};

// Media attachments of one JSON record: the structured "media" entries in
// order, then any URL found in "text" that is not already listed (kind
// guessed from the extension, size unknown = 0). Throws DataError naming the
// record id on a malformed entry.
std::vector<MediaRef> extract_media(const nlohmann::json& record);

RawTweet parse_raw_record(const nlohmann::json& record);  // throws DataError
RawTweet parse_raw_line(const std::string& line);

nlohmann::json to_json(const RawTweet& tweet);
nlohmann::json to_json(const Tweet& tweet);
Tweet tweet_from_json(const nlohmann::json& record);  // cleaned-corpus record

// Cleans text and assigns the region. Throws DataError when the coordinate
// lies outside the box.
Tweet clean_record(const RawTweet& raw, const IngestOptions& options);

struct RejectedRecord {
  std::string id;
  std::string reason;
};

struct IngestResult {
  std::vector<Tweet> tweets;
  std::vector<RejectedRecord> rejected;  // out-of-box coordinates
};

/// Reads raw JSON-lines records. Malformed records and duplicate ids are
/// fatal (DataError); out-of-box records are skipped and reported.
IngestResult ingest(std::istream& in, const IngestOptions& options);
IngestResult ingest(const std::vector<RawTweet>& records, const IngestOptions& options);

std::vector<RawTweet> read_raw_corpus(std::istream& in);
void write_raw_corpus(std::ostream& out, const std::vector<RawTweet>& tweets);

std::vector<Tweet> read_clean_corpus(std::istream& in);
std::vector<Tweet> read_clean_corpus_file(const std::string& path);
void write_clean_corpus(std::ostream& out, const std::vector<Tweet>& tweets);

}  // namespace tac::corpus

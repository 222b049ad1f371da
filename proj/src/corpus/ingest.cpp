#include "tac/corpus/ingest.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "tac/common/errors.hpp"
#include "tac/corpus/region.hpp"

namespace tac::corpus {
namespace {

using nlohmann::json;

std::string record_id(const json& record) {
  const auto it = record.find("id");
  if (it != record.end() && it->is_string()) return it->get<std::string>();
  return "<missing id>";
}

[[noreturn]] void fail(const json& record, const std::string& what) {
  throw DataError("record " + record_id(record) + ": " + what);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

MediaKind guess_kind(const std::string& url) {
  std::string lower = url;
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (const char* ext : {".mp4", ".mov", ".webm", ".m3u8", ".avi"}) {
    if (ends_with(lower, ext)) return MediaKind::video;
  }
  if (lower.find("/video/") != std::string::npos) return MediaKind::video;
  return MediaKind::image;
}

MediaRef parse_media_entry(const json& record, const json& entry) {
  if (!entry.is_object()) fail(record, "media entry is not an object");
  MediaRef ref;
  const auto url = entry.find("url");
  if (url == entry.end() || !url->is_string() || url->get<std::string>().empty()) {
    fail(record, "media entry without url");
  }
  ref.url = url->get<std::string>();
  const auto kind = entry.find("kind");
  if (kind == entry.end() || !kind->is_string()) fail(record, "media entry without kind");
  try {
    ref.kind = media_kind_from_string(kind->get<std::string>());
  } catch (const DataError& e) {
    fail(record, e.what());
  }
  const auto bytes = entry.find("bytes");
  if (bytes == entry.end()) fail(record, "media entry without bytes");
  if (bytes->is_number_unsigned()) {
    ref.size_bytes = bytes->get<std::uint64_t>();
  } else if (bytes->is_number_integer() && bytes->get<std::int64_t>() >= 0) {
    ref.size_bytes = static_cast<std::uint64_t>(bytes->get<std::int64_t>());
  } else {
    fail(record, "malformed media size " + bytes->dump());
  }
  return ref;
}

template <typename T>
T required(const json& record, const char* key) {
  const auto it = record.find(key);
  if (it == record.end() || it->is_null()) fail(record, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    fail(record, std::string("bad field '") + key + "': " + it->dump());
  }
}

}  // namespace

std::vector<MediaRef> extract_media(const json& record) {
  std::vector<MediaRef> media;
  std::unordered_set<std::string> seen;
  const auto field = record.find("media");
  if (field != record.end() && !field->is_null()) {
    if (!field->is_array()) fail(record, "media is not a list");
    for (const auto& entry : *field) {
      media.push_back(parse_media_entry(record, entry));
      seen.insert(media.back().url);
    }
  }
  const auto text = record.find("text");
  if (text != record.end() && text->is_string()) {
    for (auto& url : find_urls(text->get<std::string>())) {
      if (!seen.insert(url).second) continue;
      const MediaKind kind = guess_kind(url);
      media.push_back(MediaRef{std::move(url), kind, 0});
    }
  }
  return media;
}

RawTweet parse_raw_record(const json& record) {
  if (!record.is_object()) throw DataError("record is not a JSON object");
  RawTweet tweet;
  tweet.id = required<std::string>(record, "id");
  if (tweet.id.empty()) fail(record, "empty id");
  tweet.text = required<std::string>(record, "text");
  tweet.timestamp = required<std::int64_t>(record, "ts");
  tweet.lat = required<double>(record, "lat");
  tweet.lon = required<double>(record, "lon");
  tweet.media = extract_media(record);
  return tweet;
}

RawTweet parse_raw_line(const std::string& line) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON record: ") + e.what());
  }
  return parse_raw_record(record);
}

namespace {

json media_json(const std::vector<MediaRef>& media) {
  json out = json::array();
  for (const auto& ref : media) {
    out.push_back({{"url", ref.url}, {"kind", to_string(ref.kind)}, {"bytes", ref.size_bytes}});
  }
  return out;
}

}  // namespace

json to_json(const RawTweet& tweet) {
  return {{"id", tweet.id},   {"text", tweet.text}, {"ts", tweet.timestamp},
          {"lat", tweet.lat}, {"lon", tweet.lon},   {"media", media_json(tweet.media)}};
}

json to_json(const Tweet& tweet) {
  return {{"id", tweet.id},
          {"text", tweet.text},
          {"ts", tweet.timestamp},
          {"lat", tweet.lat},
          {"lon", tweet.lon},
          {"media", media_json(tweet.media)},
          {"tokens", tweet.tokens},
          {"region", tweet.region.index()}};
}

Tweet tweet_from_json(const json& record) {
  if (!record.is_object()) throw DataError("record is not a JSON object");
  Tweet tweet;
  tweet.id = required<std::string>(record, "id");
  tweet.text = record.value("text", std::string());
  tweet.timestamp = required<std::int64_t>(record, "ts");
  tweet.lat = record.value("lat", 0.0);
  tweet.lon = record.value("lon", 0.0);
  tweet.tokens = required<std::vector<std::string>>(record, "tokens");
  const int region = required<int>(record, "region");
  if (region < 1 || region > 9) fail(record, "region outside 1..9");
  tweet.region = RegionId::from_index(region);
  const auto field = record.find("media");
  if (field != record.end() && field->is_array()) {
    for (const auto& entry : *field) tweet.media.push_back(parse_media_entry(record, entry));
  }
  return tweet;
}

Tweet clean_record(const RawTweet& raw, const IngestOptions& options) {
  const StopwordSet& stopwords = options.stopwords ? *options.stopwords : default_stopwords();
  Tweet tweet;
  tweet.id = raw.id;
  tweet.text = raw.text;
  tweet.timestamp = raw.timestamp;
  tweet.lat = raw.lat;
  tweet.lon = raw.lon;
  tweet.media = raw.media;
  try {
    tweet.region = assign_region(raw.lat, raw.lon, options.box);
  } catch (const DataError& e) {
    throw DataError("record " + raw.id + ": " + e.what());
  }
  tweet.tokens = clean_text(raw.text, stopwords);
  return tweet;
}

IngestResult ingest(const std::vector<RawTweet>& records, const IngestOptions& options) {
  options.box.validate();
  IngestResult result;
  std::unordered_set<std::string> ids;
  for (const auto& raw : records) {
    if (!ids.insert(raw.id).second) throw DataError("duplicate record id " + raw.id);
    if (!options.box.contains(raw.lat, raw.lon)) {
      try {
        assign_region(raw.lat, raw.lon, options.box);
      } catch (const DataError& e) {
        result.rejected.push_back({raw.id, e.what()});
      }
      continue;
    }
    result.tweets.push_back(clean_record(raw, options));
  }
  return result;
}

IngestResult ingest(std::istream& in, const IngestOptions& options) {
  return ingest(read_raw_corpus(in), options);
}

std::vector<RawTweet> read_raw_corpus(std::istream& in) {
  std::vector<RawTweet> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_raw_line(line));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_raw_corpus(std::ostream& out, const std::vector<RawTweet>& tweets) {
  for (const auto& tweet : tweets) out << to_json(tweet).dump() << '\n';
}

std::vector<Tweet> read_clean_corpus(std::istream& in) {
  std::vector<Tweet> out;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(tweet_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!ids.insert(out.back().id).second) throw DataError("duplicate record id " + out.back().id);
  }
  return out;
}

std::vector<Tweet> read_clean_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path);
  return read_clean_corpus(in);
}

void write_clean_corpus(std::ostream& out, const std::vector<Tweet>& tweets) {
  for (const auto& tweet : tweets) out << to_json(tweet).dump() << '\n';
}

}  // namespace tac::corpus

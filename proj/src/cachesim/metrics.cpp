#include "tac/cachesim/metrics.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "tac/common/errors.hpp"

namespace tac::cachesim {
namespace {

double ratio(std::uint64_t num, std::uint64_t den, bool& zero_flag) {
  zero_flag = den == 0;
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Distinct media by URL, first occurrence wins.
std::map<std::string, std::uint64_t> distinct_media(const std::vector<corpus::Tweet>& tweets) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& t : tweets) {
    for (const auto& m : t.media) out.try_emplace(m.url, m.size_bytes);
  }
  return out;
}

}  // namespace

MetricsReport evaluate(const CacheState& cache, const std::vector<Topic>& topics,
                       const std::vector<corpus::Tweet>& train, const std::vector<corpus::Tweet>& test) {
  std::unordered_set<std::string> train_ids;
  for (const auto& t : train) train_ids.insert(t.id);
  for (const auto& t : test) {
    if (train_ids.contains(t.id)) throw DataError("tweet " + t.id + " is in both train and test splits");
  }

  MetricsReport r;
  const auto matched = match_all(topics, test);
  std::vector<char> hit(test.size(), 0);
  std::uint64_t topics_hit = 0;
  for (const auto& m : matched) {
    if (!m.empty()) ++topics_hit;
    for (std::size_t i : m) hit[i] = 1;
  }
  std::uint64_t tweets_hit = 0;
  for (char h : hit) tweets_hit += h;
  r.tweet_hit_rate = ratio(tweets_hit, test.size(), r.no_test_tweets);
  r.tweet_hit_portion = ratio(topics_hit, topics.size(), r.no_topics);

  std::uint64_t train_bytes = 0;
  for (const auto& [url, size] : distinct_media(train)) train_bytes += size;
  r.cache_portion = ratio(cache.cached_bytes, train_bytes, r.no_train_media);

  std::uint64_t test_bytes = 0;
  for (const auto& [url, size] : distinct_media(test)) test_bytes += size;
  std::set<std::string> hit_urls;
  std::uint64_t hit_bytes = 0;
  const auto sizes = distinct_media(test);
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (!hit[i]) continue;
    for (const auto& m : test[i].media) {
      if (hit_urls.insert(m.url).second) hit_bytes += sizes.at(m.url);
    }
  }
  r.hit_cache_portion = ratio(hit_bytes, test_bytes, r.no_test_media);
  return r;
}

std::string format_metric(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

void write_metrics_csv_header(std::ostream& out) {
  out << "method,n_topics,tweet_hit_rate,tweet_hit_portion,cache_portion,hit_cache_portion\n";
}

void write_metrics_csv_row(std::ostream& out, const MetricsRow& row) {
  out << row.method << ',' << row.n_topics << ',' << format_metric(row.report.tweet_hit_rate) << ','
      << format_metric(row.report.tweet_hit_portion) << ',' << format_metric(row.report.cache_portion)
      << ',' << format_metric(row.report.hit_cache_portion) << '\n';
}

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
  std::vector<MetricsRow> rows;
  std::string line;
  if (!std::getline(in, line) || line.rfind("method,n_topics,", 0) != 0) {
    throw DataError("metrics CSV is missing its header");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 6) throw DataError("metrics CSV line " + std::to_string(lineno) + " needs 6 fields");
    MetricsRow row;
    row.method = cells[0];
    try {
      row.n_topics = std::stoul(cells[1]);
      row.report.tweet_hit_rate = std::stod(cells[2]);
      row.report.tweet_hit_portion = std::stod(cells[3]);
      row.report.cache_portion = std::stod(cells[4]);
      row.report.hit_cache_portion = std::stod(cells[5]);
    } catch (const std::exception&) {
      throw DataError("metrics CSV line " + std::to_string(lineno) + " has a malformed number");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Split split_by_time(const std::vector<corpus::Tweet>& tweets, std::int64_t boundary) {
  Split s;
  for (const auto& t : tweets) (t.timestamp < boundary ? s.train : s.test).push_back(t);
  return s;
}

}  // namespace tac::cachesim

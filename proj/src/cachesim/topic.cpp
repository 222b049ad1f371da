#include "tac/cachesim/topic.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "tac/common/errors.hpp"

namespace tac::cachesim {

std::size_t match_threshold(const Topic& topic) { return std::min(kMatchWords, topic.words.size()); }

bool match(const Topic& topic, const corpus::Tweet& tweet) {
  const std::size_t need = match_threshold(topic);
  if (need == 0) return false;
  std::size_t shared = 0;
  for (const auto& w : topic.words) {
    if (std::find(tweet.tokens.begin(), tweet.tokens.end(), w) != tweet.tokens.end() && ++shared >= need) {
      return true;
    }
  }
  return false;
}

std::vector<std::vector<std::size_t>> match_all(const std::vector<Topic>& topics,
                                                const std::vector<corpus::Tweet>& tweets) {
  std::unordered_map<std::string, std::vector<std::size_t>> postings;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    std::vector<std::string> uniq = tweets[i].tokens;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (auto& w : uniq) postings[std::move(w)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out(topics.size());
  std::vector<std::size_t> hits(tweets.size(), 0);
  std::vector<std::size_t> touched;
  for (std::size_t k = 0; k < topics.size(); ++k) {
    const std::size_t need = match_threshold(topics[k]);
    if (need == 0) continue;
    touched.clear();
    for (const auto& w : topics[k].words) {
      const auto it = postings.find(w);
      if (it == postings.end()) continue;
      for (std::size_t i : it->second) {
        if (hits[i]++ == 0) touched.push_back(i);
      }
    }
    for (std::size_t i : touched) {
      if (hits[i] >= need) out[k].push_back(i);
      hits[i] = 0;
    }
    std::sort(out[k].begin(), out[k].end());
  }
  return out;
}

std::vector<Topic> read_topics(std::istream& in) {
  std::vector<Topic> topics;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    Topic t;
    if (!(fields >> t.id)) continue;
    for (std::string w; fields >> w;) {
      if (std::find(t.words.begin(), t.words.end(), w) == t.words.end()) t.words.push_back(w);
    }
    if (t.words.empty()) throw DataError("topic '" + t.id + "' has no words");
    topics.push_back(std::move(t));
  }
  return topics;
}

std::vector<Topic> read_topics_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open topics file " + path.string());
  return read_topics(in);
}

void write_topics(std::ostream& out, const std::vector<Topic>& topics) {
  for (const auto& t : topics) {
    out << t.id;
    for (const auto& w : t.words) out << ' ' << w;
    out << '\n';
  }
}

}  // namespace tac::cachesim

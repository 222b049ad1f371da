#include "tac/topics/lda_corpus.hpp"

#include <fstream>

#include "tac/common/errors.hpp"

namespace tac::topics {

LdaCorpus to_lda_corpus(const std::vector<corpus::Tweet>& tweets, const corpus::Dictionary& dict) {
  LdaCorpus out;
  out.vocab_size = dict.size();
  out.docs.reserve(tweets.size());
  for (const auto& tweet : tweets) {
    LdaDocument doc{tweet.id, {}};
    for (const auto& token : tweet.tokens) {
      const int index = dict.lookup(token);
      if (index != corpus::Dictionary::kUnk) doc.words.push_back(index - 1);
    }
    out.docs.push_back(std::move(doc));
  }
  return out;
}

std::vector<std::vector<std::string>> topic_words_as_strings(
    const std::vector<std::vector<int>>& topics, const corpus::Dictionary& dict) {
  std::vector<std::vector<std::string>> out;
  out.reserve(topics.size());
  for (const auto& topic : topics) {
    std::vector<std::string> words;
    for (int id : topic) words.push_back(dict.word(id + 1));
    out.push_back(std::move(words));
  }
  return out;
}

void write_topics_file(const std::string& path, const std::vector<std::vector<std::string>>& topics,
                       const std::string& id_prefix) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write topics file " + path);
  for (std::size_t k = 0; k < topics.size(); ++k) {
    out << id_prefix << k;
    for (const auto& word : topics[k]) out << ' ' << word;
    out << '\n';
  }
}

}  // namespace tac::topics

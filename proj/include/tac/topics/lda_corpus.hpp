#pragma once

#include <string>
#include <vector>

#include "tac/corpus/dictionary.hpp"
#include "tac/corpus/types.hpp"
#include "tac/topics/lda.hpp"

namespace tac::topics {

// Word id = dictionary index - 1; out-of-dictionary tokens are dropped.
LdaCorpus to_lda_corpus(const std::vector<corpus::Tweet>& tweets, const corpus::Dictionary& dict);

std::vector<std::vector<std::string>> topic_words_as_strings(
    const std::vector<std::vector<int>>& topics, const corpus::Dictionary& dict);

// Topics file: one topic per line, "<id> <word> <word> ...".
void write_topics_file(const std::string& path, const std::vector<std::vector<std::string>>& topics,
                       const std::string& id_prefix = "topic-");

}  // namespace tac::topics

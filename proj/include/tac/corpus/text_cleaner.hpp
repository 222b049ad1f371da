#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tac::corpus {

using StopwordSet = std::unordered_set<std::string>;

// English stopword list compiled in from data/stopwords_en.txt.
const StopwordSet& default_stopwords();
StopwordSet load_stopwords(const std::filesystem::path& path);
StopwordSet parse_stopwords(std::string_view text);

bool is_url(std::string_view token);

// URL-shaped substrings of `text`, in order of appearance.
std::vector<std::string> find_urls(std::string_view text);

// `text` with every URL-shaped substring replaced by a space.
std::string strip_urls(std::string_view text);

/// Tokenizes and filters raw tweet text.
///
/// Tokens are split on whitespace and ASCII punctuation; a '#' opening a
/// token starts a hashtag and is kept. A token survives only if, after the
/// leading '#', it is non-empty ASCII letters. Survivors are lowercased and
/// plain words found in `stopwords` are dropped. URLs are removed first.
std::vector<std::string> clean_text(std::string_view raw, const StopwordSet& stopwords);

}  // namespace tac::corpus

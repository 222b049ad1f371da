#include "tac/corpus/text_cleaner.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "tac/common/errors.hpp"

namespace tac::corpus {

extern const char* const kEmbeddedStopwords;

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (to_lower(s[i]) != prefix[i]) return false;
  }
  return true;
}

// Filter one punctuation-free chunk; `hashtag` if it was opened by '#'.
void admit(std::string_view body, bool hashtag, const StopwordSet& stopwords,
           std::vector<std::string>& out) {
  if (body.empty()) return;
  std::string word;
  word.reserve(body.size() + 1);
  if (hashtag) word.push_back('#');
  for (char c : body) {
    if (!is_ascii_letter(c)) return;
    word.push_back(to_lower(c));
  }
  if (!hashtag && stopwords.count(word) != 0) return;
  out.push_back(std::move(word));
}

}  // namespace

StopwordSet parse_stopwords(std::string_view text) {
  StopwordSet words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && is_space(line.back())) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_space(line[start])) ++start;
    if (start == line.size() || line[start] == '#') continue;
    std::string word;
    for (std::size_t i = start; i < line.size(); ++i) word.push_back(to_lower(line[i]));
    words.insert(std::move(word));
  }
  return words;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet words = parse_stopwords(kEmbeddedStopwords);
  return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_stopwords(buffer.str());
}

bool is_url(std::string_view token) {
  return starts_with_ci(token, "http://") || starts_with_ci(token, "https://") ||
         starts_with_ci(token, "www.");
}

namespace {

template <typename OnUrl, typename OnText>
void scan_urls(std::string_view text, OnUrl&& on_url, OnText&& on_text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      on_text(text.substr(i, 1));
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && !is_space(text[end])) ++end;
    const std::string_view chunk = text.substr(i, end - i);
    // A URL may be glued to leading punctuation, e.g. "(https://...)".
    std::size_t offset = 0;
    while (offset < chunk.size() && !is_url(chunk.substr(offset)) && is_ascii_punct(chunk[offset])) {
      ++offset;
    }
    if (offset < chunk.size() && is_url(chunk.substr(offset))) {
      on_text(chunk.substr(0, offset));
      std::string_view url = chunk.substr(offset);
      while (!url.empty() && (url.back() == ')' || url.back() == ',' || url.back() == '.' ||
                              url.back() == '!' || url.back() == '?' || url.back() == ';')) {
        url.remove_suffix(1);
      }
      on_url(url);
    } else {
      on_text(chunk);
    }
    i = end;
  }
}

}  // namespace

std::vector<std::string> find_urls(std::string_view text) {
  std::vector<std::string> urls;
  scan_urls(
      text, [&](std::string_view url) { urls.emplace_back(url); }, [](std::string_view) {});
  return urls;
}

std::string strip_urls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  scan_urls(
      text, [&](std::string_view) { out.push_back(' '); },
      [&](std::string_view piece) { out.append(piece); });
  return out;
}

std::vector<std::string> clean_text(std::string_view raw, const StopwordSet& stopwords) {
  const std::string text = strip_urls(raw);
  std::vector<std::string> tokens;

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    bool hashtag = false;
    if (c == '#') {
      hashtag = true;
      ++i;
    } else if (is_ascii_punct(c)) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < n && !is_space(text[end]) && !is_ascii_punct(text[end])) ++end;
    admit(std::string_view(text).substr(i, end - i), hashtag, stopwords, tokens);
    i = end;
  }
  return tokens;
}

}  // namespace tac::corpus

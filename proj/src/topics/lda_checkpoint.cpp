#include "tac/topics/lda_checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tac/common/errors.hpp"

namespace tac::topics {
namespace {

constexpr const char* kFormatTag = "TACLDA";
constexpr int kFormatVersion = 1;

std::string exact(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void expect(std::istream& in, const std::string& key) {
  std::string got;
  if (!(in >> got) || got != key) {
    throw DataError("LDA checkpoint: expected '" + key + "', got '" + got + "'");
  }
}

template <typename T>
T read_value(std::istream& in, const std::string& key) {
  expect(in, key);
  T value{};
  if (!(in >> value)) throw DataError("LDA checkpoint: bad value for '" + key + "'");
  return value;
}

}  // namespace

void save_lda_checkpoint(std::ostream& out, const TopicModel& model) {
  const auto& cfg = model.config();
  const auto& corpus = model.corpus();
  const int K = cfg.num_topics;
  out << kFormatTag << ' ' << kFormatVersion << '\n';
  out << "num_topics " << K << '\n';
  out << "words_per_topic " << cfg.words_per_topic << '\n';
  out << "iterations " << cfg.iterations << '\n';
  out << "alpha " << exact(cfg.alpha) << '\n';
  out << "beta " << exact(cfg.beta) << '\n';
  out << "seed " << cfg.seed << '\n';
  out << "convergence_tol " << exact(cfg.convergence_tol) << '\n';
  out << "convergence_window " << cfg.convergence_window << '\n';
  out << "sweeps " << model.sweeps_done() << '\n';
  out << "vocab " << corpus.vocab_size << '\n';
  out << "docs " << corpus.docs.size() << '\n';
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    const auto& doc = corpus.docs[d];
    out << "doc " << std::quoted(doc.id) << ' ' << doc.words.size();
    for (std::size_t n = 0; n < doc.words.size(); ++n) {
      out << ' ' << doc.words[n] << ':' << model.assignments()[d][n];
    }
    out << "\nndk";
    for (int k = 0; k < K; ++k) out << ' ' << model.doc_topic_count(d, k);
    out << '\n';
  }
  // Sparse topic-word counts: "nkw <topic> <nnz> w:count ...".
  for (int k = 0; k < K; ++k) {
    std::ostringstream row;
    std::size_t nnz = 0;
    for (std::size_t w = 0; w < corpus.vocab_size; ++w) {
      const int c = model.topic_word_count(k, static_cast<int>(w));
      if (c != 0) {
        row << ' ' << w << ':' << c;
        ++nnz;
      }
    }
    out << "nkw " << k << ' ' << nnz << row.str() << '\n';
  }
  out << "end\n";
}

void save_lda_checkpoint(const std::string& path, const TopicModel& model) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write LDA checkpoint " + path);
  save_lda_checkpoint(out, model);
}

TopicModel load_lda_checkpoint(std::istream& in) {
  std::string tag;
  int version = 0;
  if (!(in >> tag >> version) || tag != kFormatTag) throw DataError("not an LDA checkpoint");
  if (version != kFormatVersion) {
    throw DataError("unsupported LDA checkpoint version " + std::to_string(version));
  }
  LdaConfig cfg;
  cfg.num_topics = read_value<int>(in, "num_topics");
  cfg.words_per_topic = read_value<int>(in, "words_per_topic");
  cfg.iterations = read_value<int>(in, "iterations");
  cfg.alpha = read_value<double>(in, "alpha");
  cfg.beta = read_value<double>(in, "beta");
  cfg.seed = read_value<std::uint64_t>(in, "seed");
  cfg.convergence_tol = read_value<double>(in, "convergence_tol");
  cfg.convergence_window = read_value<int>(in, "convergence_window");
  const int sweeps = read_value<int>(in, "sweeps");
  LdaCorpus corpus;
  corpus.vocab_size = read_value<std::size_t>(in, "vocab");
  const auto num_docs = read_value<std::size_t>(in, "docs");

  std::vector<std::vector<int>> z(num_docs);
  std::vector<std::vector<int>> ndk(num_docs);
  corpus.docs.resize(num_docs);
  for (std::size_t d = 0; d < num_docs; ++d) {
    expect(in, "doc");
    if (!(in >> std::quoted(corpus.docs[d].id))) throw DataError("LDA checkpoint: bad doc id");
    std::size_t len = 0;
    if (!(in >> len)) throw DataError("LDA checkpoint: bad doc length");
    for (std::size_t n = 0; n < len; ++n) {
      int w = 0, k = 0;
      char colon = 0;
      if (!(in >> w >> colon >> k) || colon != ':') throw DataError("LDA checkpoint: bad token");
      corpus.docs[d].words.push_back(w);
      z[d].push_back(k);
    }
    expect(in, "ndk");
    ndk[d].resize(static_cast<std::size_t>(cfg.num_topics));
    for (auto& c : ndk[d]) {
      if (!(in >> c)) throw DataError("LDA checkpoint: bad ndk row");
    }
  }
  std::vector<std::vector<std::pair<int, int>>> nkw(static_cast<std::size_t>(cfg.num_topics));
  for (int k = 0; k < cfg.num_topics; ++k) {
    expect(in, "nkw");
    int topic = -1;
    std::size_t nnz = 0;
    if (!(in >> topic >> nnz) || topic != k) throw DataError("LDA checkpoint: bad nkw header");
    for (std::size_t i = 0; i < nnz; ++i) {
      int w = 0, c = 0;
      char colon = 0;
      if (!(in >> w >> colon >> c) || colon != ':') throw DataError("LDA checkpoint: bad nkw entry");
      nkw[static_cast<std::size_t>(k)].emplace_back(w, c);
    }
  }
  expect(in, "end");

  TopicModel model = TopicModel::from_assignments(std::move(corpus), cfg, std::move(z), sweeps);
  for (std::size_t d = 0; d < num_docs; ++d) {
    for (int k = 0; k < cfg.num_topics; ++k) {
      if (model.doc_topic_count(d, k) != ndk[d][static_cast<std::size_t>(k)]) {
        throw DataError("LDA checkpoint: ndk disagrees with assignments");
      }
    }
  }
  for (int k = 0; k < cfg.num_topics; ++k) {
    long total = 0;
    for (const auto& [w, c] : nkw[static_cast<std::size_t>(k)]) {
      if (w < 0 || static_cast<std::size_t>(w) >= model.vocab_size() ||
          model.topic_word_count(k, w) != c) {
        throw DataError("LDA checkpoint: nkw disagrees with assignments");
      }
      total += c;
    }
    if (total != model.topic_count(k)) throw DataError("LDA checkpoint: nkw disagrees with assignments");
  }
  return model;
}

TopicModel load_lda_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open LDA checkpoint " + path);
  return load_lda_checkpoint(in);
}

}  // namespace tac::topics

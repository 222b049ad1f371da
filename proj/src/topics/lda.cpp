#include "tac/topics/lda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "tac/common/errors.hpp"
#include "tac/common/keyed_random.hpp"
#include "tac/common/perplexity.hpp"

namespace tac::topics {

std::size_t LdaCorpus::token_count() const {
  std::size_t n = 0;
  for (const auto& doc : docs) n += doc.words.size();
  return n;
}

void LdaConfig::validate() const {
  if (num_topics < 1) throw ConfigError("LDA needs at least one topic");
  if (words_per_topic < 1) throw ConfigError("words_per_topic must be positive");
  if (iterations < 1) throw ConfigError("LDA iterations must be >= 1");
  if (!(beta > 0.0)) throw ConfigError("LDA beta must be positive");
  if (!(effective_alpha() > 0.0)) throw ConfigError("LDA alpha must be positive");
  if (convergence_window < 0) throw ConfigError("convergence window must be >= 0");
}

TopicModel TopicModel::gibbs_init(const LdaCorpus& corpus, const LdaConfig& config) {
  config.validate();
  if (corpus.token_count() == 0) throw DataError("LDA corpus has no tokens");
  for (const auto& doc : corpus.docs) {
    for (int w : doc.words) {
      if (w < 0 || static_cast<std::size_t>(w) >= corpus.vocab_size) {
        throw DataError("document " + doc.id + " has word id outside the vocabulary");
      }
    }
  }

  TopicModel model;
  model.config_ = config;
  model.corpus_ = corpus;
  model.build_sweep_order();

  const auto K = static_cast<std::uint64_t>(config.num_topics);
  model.z_.resize(corpus.docs.size());
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    const auto& words = corpus.docs[d].words;
    model.z_[d].resize(words.size());
    for (std::size_t n = 0; n < words.size(); ++n) {
      const double u = keyed_uniform(config.seed, model.doc_keys_[d], n, 0);
      model.z_[d][n] = static_cast<int>(std::min<std::uint64_t>(
          static_cast<std::uint64_t>(u * static_cast<double>(K)), K - 1));
    }
  }
  model.rebuild_counts();
  return model;
}

TopicModel TopicModel::from_assignments(LdaCorpus corpus, const LdaConfig& config,
                                        std::vector<std::vector<int>> assignments,
                                        int sweeps_done) {
  config.validate();
  if (assignments.size() != corpus.docs.size()) throw DataError("assignment count mismatch");
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    if (assignments[d].size() != corpus.docs[d].words.size()) {
      throw DataError("assignment length mismatch for document " + corpus.docs[d].id);
    }
    for (int k : assignments[d]) {
      if (k < 0 || k >= config.num_topics) throw DataError("topic assignment out of range");
    }
    for (int w : corpus.docs[d].words) {
      if (w < 0 || static_cast<std::size_t>(w) >= corpus.vocab_size) {
        throw DataError("document " + corpus.docs[d].id + " has word id outside the vocabulary");
      }
    }
  }
  TopicModel model;
  model.config_ = config;
  model.corpus_ = std::move(corpus);
  model.z_ = std::move(assignments);
  model.sweeps_ = sweeps_done;
  model.build_sweep_order();
  model.rebuild_counts();
  return model;
}

void TopicModel::build_sweep_order() {
  const auto& docs = corpus_.docs;
  std::unordered_set<std::string> ids;
  doc_keys_.resize(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (!ids.insert(docs[d].id).second) throw DataError("duplicate document id " + docs[d].id);
    doc_keys_[d] = stable_hash(docs[d].id);
  }
  order_.resize(docs.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::sort(order_.begin(), order_.end(),
            [&](std::size_t a, std::size_t b) { return docs[a].id < docs[b].id; });
  weights_.assign(K(), 0.0);
}

void TopicModel::rebuild_counts() {
  const std::size_t k_count = K();
  ndk_.assign(corpus_.docs.size() * k_count, 0);
  nwk_.assign(corpus_.vocab_size * k_count, 0);
  nk_.assign(k_count, 0);
  for (std::size_t d = 0; d < corpus_.docs.size(); ++d) {
    const auto& words = corpus_.docs[d].words;
    for (std::size_t n = 0; n < words.size(); ++n) {
      const auto k = static_cast<std::size_t>(z_[d][n]);
      ++ndk_[d * k_count + k];
      ++nwk_[static_cast<std::size_t>(words[n]) * k_count + k];
      ++nk_[k];
    }
  }
}

void TopicModel::gibbs_sweep() {
  const std::size_t k_count = K();
  const double alpha = config_.effective_alpha();
  const double beta = config_.beta;
  const double v_beta = static_cast<double>(corpus_.vocab_size) * beta;
  const auto sweep = static_cast<std::uint64_t>(sweeps_ + 1);

  for (std::size_t d : order_) {
    const auto& words = corpus_.docs[d].words;
    int* doc_counts = &ndk_[d * k_count];
    for (std::size_t n = 0; n < words.size(); ++n) {
      int* word_counts = &nwk_[static_cast<std::size_t>(words[n]) * k_count];
      const int old_topic = z_[d][n];
      --doc_counts[old_topic];
      --word_counts[old_topic];
      --nk_[old_topic];

      double total = 0.0;
      for (std::size_t k = 0; k < k_count; ++k) {
        total += (doc_counts[k] + alpha) * (word_counts[k] + beta) / (nk_[k] + v_beta);
        weights_[k] = total;
      }
      const double u = keyed_uniform(config_.seed, doc_keys_[d], n, sweep) * total;
      std::size_t new_topic = 0;
      while (new_topic + 1 < k_count && weights_[new_topic] <= u) ++new_topic;

      z_[d][n] = static_cast<int>(new_topic);
      ++doc_counts[new_topic];
      ++word_counts[new_topic];
      ++nk_[new_topic];
    }
  }
  ++sweeps_;
}

LdaEstimates TopicModel::estimate() const {
  const std::size_t k_count = K();
  const std::size_t vocab = corpus_.vocab_size;
  const double alpha = config_.effective_alpha();
  const double beta = config_.beta;

  LdaEstimates est;
  est.num_docs = corpus_.docs.size();
  est.num_topics = k_count;
  est.vocab_size = vocab;
  est.theta.resize(est.num_docs * k_count);
  est.phi.resize(k_count * vocab);

  for (std::size_t d = 0; d < est.num_docs; ++d) {
    const double denom =
        static_cast<double>(corpus_.docs[d].words.size()) + static_cast<double>(k_count) * alpha;
    for (std::size_t k = 0; k < k_count; ++k) {
      est.theta[d * k_count + k] = (ndk_[d * k_count + k] + alpha) / denom;
    }
  }
  for (std::size_t k = 0; k < k_count; ++k) {
    const double denom = nk_[k] + static_cast<double>(vocab) * beta;
    for (std::size_t w = 0; w < vocab; ++w) {
      est.phi[k * vocab + w] = (nwk_[w * k_count + k] + beta) / denom;
    }
  }
  return est;
}

bool TopicModel::consistent() const {
  const std::size_t k_count = K();
  std::vector<int> ndk(corpus_.docs.size() * k_count, 0);
  std::vector<int> nwk(corpus_.vocab_size * k_count, 0);
  std::vector<int> nk(k_count, 0);
  for (std::size_t d = 0; d < corpus_.docs.size(); ++d) {
    const auto& words = corpus_.docs[d].words;
    if (z_[d].size() != words.size()) return false;
    int row_sum = 0;
    for (std::size_t n = 0; n < words.size(); ++n) {
      const int k = z_[d][n];
      if (k < 0 || static_cast<std::size_t>(k) >= k_count) return false;
      ++ndk[d * k_count + k];
      ++nwk[static_cast<std::size_t>(words[n]) * k_count + k];
      ++nk[k];
    }
    for (std::size_t k = 0; k < k_count; ++k) row_sum += ndk_[d * k_count + k];
    if (row_sum != static_cast<int>(words.size())) return false;
  }
  for (std::size_t k = 0; k < k_count; ++k) {
    long column = 0;
    for (std::size_t w = 0; w < corpus_.vocab_size; ++w) column += nwk_[w * k_count + k];
    if (column != nk_[k]) return false;
  }
  return ndk == ndk_ && nwk == nwk_ && nk == nk_;
}

std::vector<std::vector<int>> top_words(const LdaEstimates& estimates, int k_words) {
  const std::size_t vocab = estimates.vocab_size;
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(std::max(k_words, 0)), vocab);
  std::vector<std::vector<int>> out(estimates.num_topics);
  std::vector<int> ids(vocab);
  for (std::size_t k = 0; k < estimates.num_topics; ++k) {
    std::iota(ids.begin(), ids.end(), 0);
    const double* row = &estimates.phi[k * vocab];
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take), ids.end(),
                      [row](int a, int b) { return row[a] > row[b] || (row[a] == row[b] && a < b); });
    out[k].assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

double lda_perplexity(const LdaEstimates& estimates, const LdaCorpus& corpus) {
  if (corpus.docs.size() != estimates.num_docs) throw DataError("estimates do not match corpus");
  const std::size_t k_count = estimates.num_topics;
  PerplexityAccumulator acc;
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    for (int w : corpus.docs[d].words) {
      double p = 0.0;
      for (std::size_t k = 0; k < k_count; ++k) {
        p += estimates.theta_at(d, k) * estimates.phi_at(k, static_cast<std::size_t>(w));
      }
      acc.add_probability(p);
    }
  }
  if (acc.count() == 0) throw DataError("perplexity of a corpus with no tokens");
  return acc.value();
}

LdaTrainResult train_lda(const LdaCorpus& corpus, const LdaConfig& config,
                         const LdaProgress& progress) {
  LdaTrainResult result{TopicModel::gibbs_init(corpus, config), {}, false};
  int quiet_sweeps = 0;
  for (int it = 1; it <= config.iterations; ++it) {
    result.model.gibbs_sweep();
    const double perplexity = lda_perplexity(result.model.estimate(), result.model.corpus());
    if (!std::isfinite(perplexity)) {
      throw NumericError("non-finite LDA perplexity at iteration " + std::to_string(it));
    }
    if (!result.perplexity_trace.empty()) {
      const double prev = result.perplexity_trace.back();
      quiet_sweeps = std::abs(perplexity - prev) / prev < config.convergence_tol ? quiet_sweeps + 1 : 0;
    }
    result.perplexity_trace.push_back(perplexity);
    if (progress) progress(it, perplexity);
    if (config.convergence_window > 0 && quiet_sweeps >= config.convergence_window) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace tac::topics

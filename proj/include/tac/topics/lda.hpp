#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tac::topics {

// A document as dense word ids in [0, vocab_size).
struct LdaDocument {
  std::string id;
  std::vector<int> words;
};

struct LdaCorpus {
  std::size_t vocab_size = 0;
  std::vector<LdaDocument> docs;

  std::size_t token_count() const;
};

struct LdaConfig {
  int num_topics = 20;
  int words_per_topic = 7;
  int iterations = 100;
  double alpha = 0.0;  // <= 0 selects 50 / num_topics
  double beta = 0.01;
  std::uint64_t seed = 1;
  // Early stop once the relative perplexity change stays below
  // `convergence_tol` for `convergence_window` consecutive sweeps; a window
  // of 0 always runs `iterations` sweeps.
  double convergence_tol = 1e-4;
  int convergence_window = 5;

  double effective_alpha() const { return alpha > 0.0 ? alpha : 50.0 / num_topics; }
  void validate() const;  // throws ConfigError
};

// Posterior-mean point estimates. Both matrices are row-major.
struct LdaEstimates {
  std::size_t num_docs = 0;
  std::size_t num_topics = 0;
  std::size_t vocab_size = 0;
  std::vector<double> theta;  // num_docs x num_topics
  std::vector<double> phi;    // num_topics x vocab_size

  double theta_at(std::size_t doc, std::size_t topic) const { return theta[doc * num_topics + topic]; }
  double phi_at(std::size_t topic, std::size_t word) const { return phi[topic * vocab_size + word]; }
};

/// Collapsed Gibbs state for LDA.
///
/// Documents are swept in ascending id order and every draw is keyed by
/// (document id, token position, sweep number), so the chain does not
/// depend on the order documents were supplied in. Document `d` in the
/// accessors is the caller's index.
class TopicModel {
 public:
  // Random initial assignment; throws DataError for an empty corpus or
  // duplicate document ids, ConfigError for invalid config.
  static TopicModel gibbs_init(const LdaCorpus& corpus, const LdaConfig& config);

  // Resamples every token once from its collapsed conditional.
  void gibbs_sweep();

  LdaEstimates estimate() const;

  const LdaConfig& config() const { return config_; }
  const LdaCorpus& corpus() const { return corpus_; }
  int num_topics() const { return config_.num_topics; }
  std::size_t vocab_size() const { return corpus_.vocab_size; }
  int sweeps_done() const { return sweeps_; }

  int doc_topic_count(std::size_t doc, int topic) const { return ndk_[doc * K() + topic]; }
  int topic_word_count(int topic, int word) const { return nwk_[static_cast<std::size_t>(word) * K() + topic]; }
  int topic_count(int topic) const { return nk_[topic]; }
  const std::vector<std::vector<int>>& assignments() const { return z_; }

  // True when all count matrices agree with the assignments.
  bool consistent() const;

  // Rebuilds a model from stored assignments (checkpoint reload).
  static TopicModel from_assignments(LdaCorpus corpus, const LdaConfig& config,
                                     std::vector<std::vector<int>> assignments, int sweeps_done);

 private:
  TopicModel() = default;
  std::size_t K() const { return static_cast<std::size_t>(config_.num_topics); }
  void rebuild_counts();
  void build_sweep_order();

  LdaConfig config_;
  LdaCorpus corpus_;
  std::vector<std::vector<int>> z_;
  std::vector<int> ndk_;  // doc-major
  std::vector<int> nwk_;  // word-major: each word's topic counts are contiguous
  std::vector<int> nk_;
  std::vector<std::size_t> order_;
  std::vector<std::uint64_t> doc_keys_;
  std::vector<double> weights_;
  int sweeps_ = 0;
};

// For each topic, the `k_words` word ids with the largest phi, descending;
// ties go to the lower id. Truncated when k_words exceeds the vocabulary.
std::vector<std::vector<int>> top_words(const LdaEstimates& estimates, int k_words);

// 2^(-(1/N) sum log2 sum_k theta[d,k] phi[k,w]) over the corpus tokens.
// Throws DataError when the corpus has no tokens.
double lda_perplexity(const LdaEstimates& estimates, const LdaCorpus& corpus);

struct LdaTrainResult {
  TopicModel model;
  std::vector<double> perplexity_trace;  // one entry per sweep
  bool converged = false;
};

using LdaProgress = std::function<void(int sweep, double perplexity)>;

LdaTrainResult train_lda(const LdaCorpus& corpus, const LdaConfig& config,
                         const LdaProgress& progress = {});

}  // namespace tac::topics

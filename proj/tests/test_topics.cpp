#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "support/lda_oracle.hpp"
#include "tac/common/errors.hpp"
#include "tac/topics/lda.hpp"
#include "tac/topics/lda_checkpoint.hpp"

using namespace tac::topics;
using tac::testing::log_collapsed_joint;

namespace {

LdaCorpus random_corpus(std::uint64_t seed, int docs, int vocab, int max_len) {
  std::mt19937_64 rng(seed);
  LdaCorpus corpus;
  corpus.vocab_size = static_cast<std::size_t>(vocab);
  for (int d = 0; d < docs; ++d) {
    LdaDocument doc{"doc" + std::to_string(d), {}};
    const int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
    for (int i = 0; i < len; ++i) doc.words.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(vocab)));
    corpus.docs.push_back(doc);
  }
  return corpus;
}

}  // namespace

TEST_CASE("gibbs_init") {
  LdaConfig cfg;
  cfg.num_topics = 2;
  cfg.seed = 11;
  const LdaCorpus one{1, {{"d", {0}}}};
  const TopicModel m = TopicModel::gibbs_init(one, cfg);
  CHECK((m.assignments()[0][0] == 0 || m.assignments()[0][0] == 1));
  CHECK(m.doc_topic_count(0, 0) + m.doc_topic_count(0, 1) == 1);

  const LdaCorpus corpus = random_corpus(5, 30, 12, 9);
  cfg.num_topics = 4;
  const TopicModel a = TopicModel::gibbs_init(corpus, cfg);
  const TopicModel b = TopicModel::gibbs_init(corpus, cfg);
  CHECK(a.assignments() == b.assignments());
  CHECK(a.consistent());

  CHECK_THROWS_AS(TopicModel::gibbs_init(LdaCorpus{3, {{"x", {}}}}, cfg), tac::DataError);
  CHECK_THROWS_AS(TopicModel::gibbs_init(LdaCorpus{3, {}}, cfg), tac::DataError);
  cfg.beta = 0;
  CHECK_THROWS_AS(TopicModel::gibbs_init(corpus, cfg), tac::ConfigError);
}

TEST_CASE("gibbs_sweep keeps counts consistent") {
  LdaConfig cfg;
  cfg.num_topics = 5;
  TopicModel m = TopicModel::gibbs_init(random_corpus(9, 40, 15, 12), cfg);
  for (int i = 0; i < 20; ++i) {
    m.gibbs_sweep();
    CHECK(m.consistent());
  }
}

TEST_CASE("single token with one topic never moves") {
  LdaConfig cfg;
  cfg.num_topics = 1;
  TopicModel m = TopicModel::gibbs_init(LdaCorpus{1, {{"d", {0}}}}, cfg);
  for (int i = 0; i < 10; ++i) m.gibbs_sweep();
  CHECK(m.assignments()[0][0] == 0);
}

TEST_CASE("sweep distribution matches the exact collapsed posterior") {
  // 1 document, 2 tokens, 2 topics: enumerate all 4 joint states.
  const std::vector<int> words = {0, 1};
  LdaConfig cfg;
  cfg.num_topics = 2;
  cfg.seed = 2024;
  const int V = 2;
  const double alpha = cfg.effective_alpha();

  std::array<double, 4> exact{};
  double norm = 0.0;
  for (int s = 0; s < 4; ++s) {
    exact[s] = std::exp(log_collapsed_joint(words, {s >> 1, s & 1}, 2, V, alpha, cfg.beta));
    norm += exact[s];
  }
  for (double& p : exact) p /= norm;

  TopicModel m = TopicModel::gibbs_init(LdaCorpus{2, {{"d", words}}}, cfg);
  std::array<double, 4> empirical{};
  const int sweeps = 100000;
  for (int i = 0; i < sweeps; ++i) {
    m.gibbs_sweep();
    empirical[(m.assignments()[0][0] << 1) | m.assignments()[0][1]] += 1.0 / sweeps;
  }
  double tv = 0.0;
  for (int s = 0; s < 4; ++s) tv += 0.5 * std::abs(empirical[s] - exact[s]);
  CHECK(tv < 0.02);
}

TEST_CASE("estimate") {
  SUBCASE("one topic gives all-ones theta") {
    LdaConfig cfg;
    cfg.num_topics = 1;
    TopicModel m = TopicModel::gibbs_init(random_corpus(1, 5, 4, 5), cfg);
    m.gibbs_sweep();
    const auto est = m.estimate();
    for (std::size_t d = 0; d < est.num_docs; ++d) CHECK(est.theta_at(d, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("uniform counts give uniform rows") {
    LdaConfig cfg;
    cfg.num_topics = 2;
    cfg.alpha = 0.5;
    cfg.beta = 0.1;
    const TopicModel m = TopicModel::from_assignments(LdaCorpus{2, {{"d", {0, 1, 0, 1}}}}, cfg, {{0, 0, 1, 1}}, 1);
    const auto est = m.estimate();
    CHECK(est.theta_at(0, 0) == doctest::Approx(0.5));
    CHECK(est.phi_at(0, 0) == doctest::Approx(0.5));
    CHECK(est.phi_at(1, 1) == doctest::Approx(0.5));
  }
  SUBCASE("hand-sized case") {
    LdaConfig cfg;
    cfg.num_topics = 2;
    cfg.alpha = 0.5;
    cfg.beta = 0.5;
    const TopicModel m = TopicModel::from_assignments(LdaCorpus{2, {{"d", {0, 0, 1}}}}, cfg, {{0, 0, 1}}, 1);
    const auto est = m.estimate();
    // theta = (ndk + a) / (N + K a);  phi = (nkw + b) / (nk + V b)
    CHECK(est.theta_at(0, 0) == doctest::Approx(2.5 / 4.0).epsilon(1e-12));
    CHECK(est.theta_at(0, 1) == doctest::Approx(1.5 / 4.0).epsilon(1e-12));
    CHECK(est.phi_at(0, 0) == doctest::Approx(2.5 / 3.0).epsilon(1e-12));
    CHECK(est.phi_at(0, 1) == doctest::Approx(0.5 / 3.0).epsilon(1e-12));
    CHECK(est.phi_at(1, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(est.phi_at(1, 1) == doctest::Approx(0.75).epsilon(1e-12));
  }
  SUBCASE("rows are probability vectors") {
    LdaConfig cfg;
    cfg.num_topics = 6;
    TopicModel m = TopicModel::gibbs_init(random_corpus(8, 25, 30, 10), cfg);
    m.gibbs_sweep();
    const auto est = m.estimate();
    for (std::size_t d = 0; d < est.num_docs; ++d) {
      double s = 0;
      for (std::size_t k = 0; k < est.num_topics; ++k) s += est.theta_at(d, k);
      CHECK(std::abs(s - 1.0) < 1e-9);
    }
    for (std::size_t k = 0; k < est.num_topics; ++k) {
      double s = 0;
      for (std::size_t w = 0; w < est.vocab_size; ++w) s += est.phi_at(k, w);
      CHECK(std::abs(s - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("top_words") {
  LdaEstimates est;
  est.num_topics = 2;
  est.vocab_size = 3;
  est.phi = {0.5, 0.3, 0.2, 0.25, 0.5, 0.25};
  const auto top = top_words(est, 2);
  CHECK(top[0] == std::vector<int>{0, 1});
  CHECK(top[1] == std::vector<int>{1, 0});
  est.phi = {0.5, 0.5, 0.0, 0.2, 0.4, 0.4};
  CHECK(top_words(est, 2)[0] == std::vector<int>{0, 1});
  CHECK(top_words(est, 2)[1] == std::vector<int>{1, 2});
  CHECK(top_words(est, 10)[0].size() == 3);
}

TEST_CASE("lda_perplexity identities") {
  SUBCASE("single word, single topic") {
    LdaConfig cfg;
    cfg.num_topics = 1;
    TopicModel m = TopicModel::gibbs_init(LdaCorpus{1, {{"a", {0, 0, 0}}, {"b", {0}}}}, cfg);
    m.gibbs_sweep();
    CHECK(lda_perplexity(m.estimate(), m.corpus()) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("uniform phi gives V") {
    const std::size_t V = 37;
    LdaCorpus corpus = random_corpus(4, 6, static_cast<int>(V), 8);
    LdaEstimates est;
    est.num_docs = corpus.docs.size();
    est.num_topics = 3;
    est.vocab_size = V;
    est.theta.assign(est.num_docs * 3, 1.0 / 3.0);
    est.phi.assign(3 * V, 1.0 / V);
    CHECK(lda_perplexity(est, corpus) == doctest::Approx(static_cast<double>(V)).epsilon(1e-9));
  }
  SUBCASE("3-document toy corpus against a direct log-sum") {
    LdaConfig cfg;
    cfg.num_topics = 2;
    TopicModel m = TopicModel::gibbs_init(LdaCorpus{4, {{"x", {0, 1, 1}}, {"y", {2, 3}}, {"z", {0, 3, 3, 2}}}}, cfg);
    m.gibbs_sweep();
    const auto est = m.estimate();
    // Oracle: likelihood from the raw counts, in natural log.
    const double a = cfg.effective_alpha(), b = cfg.beta;
    double ln_sum = 0.0;
    int n = 0;
    for (std::size_t d = 0; d < 3; ++d) {
      const auto& words = m.corpus().docs[d].words;
      for (int w : words) {
        double p = 0.0;
        for (int k = 0; k < 2; ++k) {
          const double th = (m.doc_topic_count(d, k) + a) / (words.size() + 2 * a);
          const double ph = (m.topic_word_count(k, w) + b) / (m.topic_count(k) + 4 * b);
          p += th * ph;
        }
        ln_sum += std::log(p);
        ++n;
      }
    }
    CHECK(lda_perplexity(est, m.corpus()) == doctest::Approx(std::exp(-ln_sum / n)).epsilon(1e-12));
  }
  SUBCASE("empty corpus is an error") {
    LdaEstimates est;
    est.num_docs = 1;
    est.num_topics = 1;
    est.vocab_size = 1;
    est.theta = {1.0};
    est.phi = {1.0};
    CHECK_THROWS_AS(lda_perplexity(est, LdaCorpus{1, {{"e", {}}}}), tac::DataError);
  }
}

TEST_CASE("document order does not change the estimates") {
  LdaConfig cfg;
  cfg.num_topics = 4;
  cfg.iterations = 15;
  cfg.convergence_window = 0;
  LdaCorpus corpus = random_corpus(21, 40, 20, 10);
  const auto base = train_lda(corpus, cfg);
  const auto base_est = base.model.estimate();

  std::mt19937_64 rng(1);
  std::vector<std::size_t> perm(corpus.docs.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  LdaCorpus shuffled{corpus.vocab_size, {}};
  for (std::size_t i : perm) shuffled.docs.push_back(corpus.docs[i]);
  const auto other = train_lda(shuffled, cfg);
  const auto other_est = other.model.estimate();

  CHECK(base_est.phi == other_est.phi);
  REQUIRE(base.perplexity_trace.size() == other.perplexity_trace.size());
  for (std::size_t i = 0; i < base.perplexity_trace.size(); ++i) {
    // Only the summation order differs.
    CHECK(other.perplexity_trace[i] == doctest::Approx(base.perplexity_trace[i]).epsilon(1e-12));
  }
  for (std::size_t j = 0; j < perm.size(); ++j) {
    for (std::size_t k = 0; k < 4; ++k) CHECK(other_est.theta_at(j, k) == base_est.theta_at(perm[j], k));
  }
}

TEST_CASE("train_lda stops early on convergence and honours iterations") {
  LdaConfig cfg;
  cfg.num_topics = 3;
  cfg.iterations = 1;
  CHECK(train_lda(random_corpus(2, 10, 8, 6), cfg).perplexity_trace.size() == 1);

  cfg.iterations = 500;
  cfg.convergence_tol = 0.5;  // any wiggle counts as converged
  const auto result = train_lda(random_corpus(2, 10, 8, 6), cfg);
  CHECK(result.converged);
  CHECK(result.perplexity_trace.size() == 6);
}

TEST_CASE("checkpoint reload reproduces estimates") {
  LdaConfig cfg;
  cfg.num_topics = 3;
  cfg.seed = 77;
  LdaCorpus corpus = random_corpus(13, 12, 10, 7);
  corpus.docs[0].id = "id with space";
  TopicModel m = TopicModel::gibbs_init(corpus, cfg);
  for (int i = 0; i < 4; ++i) m.gibbs_sweep();

  std::stringstream buffer;
  save_lda_checkpoint(buffer, m);
  TopicModel back = load_lda_checkpoint(buffer);
  CHECK(back.estimate().phi == m.estimate().phi);
  CHECK(back.estimate().theta == m.estimate().theta);
  CHECK(back.sweeps_done() == 4);
  CHECK(back.corpus().docs[0].id == "id with space");
  m.gibbs_sweep();
  back.gibbs_sweep();
  CHECK(back.assignments() == m.assignments());

  std::stringstream corrupted("TACLDA 2\n");
  CHECK_THROWS_AS(load_lda_checkpoint(corrupted), tac::DataError);
}

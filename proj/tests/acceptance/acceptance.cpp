// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion
// numbers as arguments to run a subset.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/lda_oracle.hpp"
#include "support/lstm_oracle.hpp"
#include "support/pl_oracle.hpp"
#include "support/random_instances.hpp"
#include "tac/cachesim/cache.hpp"
#include "tac/cachesim/metrics.hpp"
#include "tac/cachesim/prior_list.hpp"
#include "tac/cachesim/requests.hpp"
#include "tac/cachesim/selection.hpp"
#include "tac/cli/app.hpp"
#include "tac/common/perplexity.hpp"
#include "tac/corpus/dictionary.hpp"
#include "tac/corpus/ingest.hpp"
#include "tac/langmodel/batching.hpp"
#include "tac/langmodel/geo_encoding.hpp"
#include "tac/langmodel/lstm.hpp"
#include "tac/langmodel/prediction.hpp"
#include "tac/langmodel/trainer.hpp"
#include "tac/synth/generator.hpp"
#include "tac/synth/oracle.hpp"
#include "tac/synth/recovery.hpp"
#include "tac/topics/lda.hpp"
#include "tac/topics/lda_corpus.hpp"

using namespace tac;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

// 1 ------------------------------------------------------------------------

Outcome perplexity_identities() {
  bool ok = true;
  std::string detail;
  for (const std::size_t V : {std::size_t{8}, std::size_t{100}, std::size_t{60000}}) {
    // All-zero LSTM: every logit is equal, so each step predicts uniformly.
    langmodel::LstmModel zero(V, 4, 2);
    std::vector<int> stream;
    for (std::size_t i = 0; i < 64; ++i) stream.push_back(static_cast<int>((i * 7919) % V));
    const double lstm = langmodel::lm_perplexity(zero, stream);

    topics::LdaEstimates est;
    est.num_docs = 1;
    est.num_topics = 3;
    est.vocab_size = V;
    est.theta.assign(3, 1.0 / 3.0);
    est.phi.assign(3 * V, 1.0 / static_cast<double>(V));
    topics::LdaCorpus corpus{V, {{"d", {}}}};
    for (std::size_t i = 0; i < 64; ++i) corpus.docs[0].words.push_back(static_cast<int>((i * 31) % V));
    const double lda = topics::lda_perplexity(est, corpus);

    PerplexityAccumulator acc;
    for (int i = 0; i < 1000; ++i) acc.add_probability(1.0 / static_cast<double>(V));
    const double direct = acc.value();

    const double target = static_cast<double>(V);
    ok = ok && close_rel(lstm, target, 1e-9) && close_rel(lda, target, 1e-9) && close_rel(direct, target, 1e-9);
    detail += fmt("V=%zu lstm %.12g lda %.12g; ", V, lstm, lda);
  }

  // Perfect predictors: a dominant bias on a constant stream, and a
  // one-word LDA vocabulary.
  langmodel::LstmModel sure(8, 4, 1);
  sure.proj_bias(3, 0) = 1000.0;
  const double lstm_one = langmodel::lm_perplexity(sure, std::vector<int>(50, 3));
  topics::LdaEstimates one;
  one.num_docs = 1;
  one.num_topics = 1;
  one.vocab_size = 1;
  one.theta = {1.0};
  one.phi = {1.0};
  const double lda_one = topics::lda_perplexity(one, topics::LdaCorpus{1, {{"d", {0, 0, 0}}}});
  ok = ok && close_rel(lstm_one, 1.0, 1e-9) && close_rel(lda_one, 1.0, 1e-9);
  detail += fmt("perfect lstm %.12g lda %.12g", lstm_one, lda_one);
  return {ok, detail};
}

// 2 ------------------------------------------------------------------------

Outcome lda_sweep_correctness() {
  const std::vector<int> words = {0, 1};
  topics::LdaConfig cfg;
  cfg.num_topics = 2;
  cfg.seed = 7;
  std::array<double, 4> exact{};
  double norm = 0.0;
  for (int s = 0; s < 4; ++s) {
    exact[s] = std::exp(testing::log_collapsed_joint(words, {s >> 1, s & 1}, 2, 2, cfg.effective_alpha(), cfg.beta));
    norm += exact[s];
  }
  for (double& p : exact) p /= norm;

  auto model = topics::TopicModel::gibbs_init(topics::LdaCorpus{2, {{"d", words}}}, cfg);
  std::array<double, 4> empirical{};
  const int sweeps = 100000;
  for (int i = 0; i < sweeps; ++i) {
    model.gibbs_sweep();
    empirical[(model.assignments()[0][0] << 1) | model.assignments()[0][1]] += 1.0 / sweeps;
  }
  double tv = 0.0;
  for (int s = 0; s < 4; ++s) tv += 0.5 * std::abs(empirical[s] - exact[s]);
  return {tv <= 0.02, fmt("total variation %.5f over 1e5 sweeps (limit 0.02)", tv)};
}

// 3 ------------------------------------------------------------------------

Outcome planted_topic_recovery() {
  // Equally popular topics; long tweets give each topic enough co-occurrence.
  synth::GeneratorSpec spec = synth::default_spec(10, 1);
  spec.topics = synth::make_topics(10, 10, 0.8);
  synth::set_affinity(spec, synth::zipf_weights(10, 0.0), 0.8);
  spec.min_length = 8;
  spec.max_length = 20;
  const auto generated = synth::generate(spec, 2000);
  const auto tweets = corpus::ingest(generated.raw, {}).tweets;
  const auto dict = corpus::Dictionary::build(tweets);

  topics::LdaConfig cfg;
  cfg.num_topics = 10;
  cfg.iterations = 100;
  cfg.seed = 1;
  cfg.convergence_window = 0;
  const auto result = topics::train_lda(topics::to_lda_corpus(tweets, dict), cfg);
  const auto recovered =
      topics::topic_words_as_strings(topics::top_words(result.model.estimate(), 7), dict);
  std::vector<std::vector<std::string>> planted;
  for (const auto& t : spec.topics) planted.emplace_back(t.words.begin(), t.words.begin() + 7);
  const double score = synth::topic_recovery_score(planted, recovered);

  const auto& trace = result.perplexity_trace;
  const double first = median({trace.begin(), trace.begin() + 20});
  const double last = median({trace.end() - 20, trace.end()});
  return {score >= 0.7 && last < first && trace.size() == 100,
          fmt("recovery %.3f (>= 0.7); perplexity median first 20 %.2f, last 20 %.2f", score, first, last)};
}

// 4 ------------------------------------------------------------------------

Outcome gradient_check() {
  double worst = 0.0;
  std::uint64_t worst_seed = 0;
  std::size_t params = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto r = testing::gradient_check(seed);
    params = r.parameters;
    if (r.max_relative_error > worst) {
      worst = r.max_relative_error;
      worst_seed = seed;
    }
  }
  return {worst <= 1e-4, fmt("max relative error %.3g (seed %llu) over %zu parameters x 100 seeds", worst,
                             static_cast<unsigned long long>(worst_seed), params)};
}

// 5 ------------------------------------------------------------------------

struct MarkovLanguage {
  int V = 0;
  std::vector<std::vector<double>> next;  // row a*V+b: p(c | a, b)
  double entropy_rate = 0.0;               // bits per token

  std::vector<int> sample(std::size_t n, std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<int> s = {0, 1};
    while (s.size() < n) {
      const auto& row = next[static_cast<std::size_t>(s[s.size() - 2] * V + s.back())];
      const double r = u(rng);
      double acc = 0.0;
      int c = 0;
      for (; c < V - 1; ++c) {
        acc += row[static_cast<std::size_t>(c)];
        if (r < acc) break;
      }
      s.push_back(c);
    }
    return s;
  }
};

MarkovLanguage markov_language(int V, double concentration, std::mt19937_64& rng) {
  MarkovLanguage m;
  m.V = V;
  std::gamma_distribution<double> gamma(concentration, 1.0);
  m.next.assign(static_cast<std::size_t>(V * V), std::vector<double>(static_cast<std::size_t>(V)));
  for (auto& row : m.next) {
    double sum = 0.0;
    for (double& p : row) sum += (p = gamma(rng));
    for (double& p : row) p /= sum;
  }
  // Stationary distribution over (previous, current) pairs.
  const auto pairs = static_cast<std::size_t>(V * V);
  std::vector<double> pi(pairs, 1.0 / static_cast<double>(pairs));
  for (int it = 0; it < 5000; ++it) {
    std::vector<double> step(pairs, 0.0);
    for (int a = 0; a < V; ++a) {
      for (int b = 0; b < V; ++b) {
        const auto ab = static_cast<std::size_t>(a * V + b);
        for (int c = 0; c < V; ++c) step[static_cast<std::size_t>(b * V + c)] += pi[ab] * m.next[ab][static_cast<std::size_t>(c)];
      }
    }
    pi = std::move(step);
  }
  for (std::size_t ab = 0; ab < pairs; ++ab) {
    for (double p : m.next[ab]) {
      if (p > 0.0) m.entropy_rate -= pi[ab] * p * std::log2(p);
    }
  }
  return m;
}

Outcome lstm_learning() {
  std::mt19937_64 rng(1);
  const auto lang = markov_language(10, 0.3, rng);
  const auto train_stream = lang.sample(200000, rng);
  const auto test_stream = lang.sample(20000, rng);

  // Medium preset with width, epochs and learning rate scaled down.
  auto cfg = langmodel::LstmConfig::preset(langmodel::Preset::medium, langmodel::InputMode::skipgram);
  cfg.vocab_size = 10;
  cfg.hidden_size = 64;
  cfg.max_epoch = 16;
  cfg.lr_decay_epoch = 8;
  cfg.learning_rate = 0.5;
  cfg.skip = cfg.num_steps;
  cfg.seed = 1;
  auto model = langmodel::LstmModel::initialized(cfg);
  langmodel::train(model, langmodel::SkipGramBatcher(train_stream, cfg.num_steps, cfg.batch_size, cfg.skip), cfg);
  const double ppl = langmodel::lm_perplexity(model, test_stream);
  const double bound = 1.15 * std::exp2(lang.entropy_rate);
  return {ppl <= bound, fmt("test perplexity %.4f <= %.4f (1.15 * 2^H, H = %.4f bits)", ppl, bound,
                            lang.entropy_rate)};
}

// 6 ------------------------------------------------------------------------

Outcome geo_prediction() {
  synth::GeneratorSpec spec = synth::default_spec(9, 7);
  synth::set_affinity(spec, synth::zipf_weights(9, 0.0), 0.9);
  spec.min_length = 12;
  spec.max_length = 20;
  spec.primary_prob = 0.9;
  spec.background_prob = 0.0;
  spec.hapax_prob = 0.0;
  const auto tweets = corpus::ingest(synth::generate(spec, 900).raw, {}).tweets;
  const std::vector<corpus::Tweet> train(tweets.begin(), tweets.begin() + 600);
  const std::vector<corpus::Tweet> test(tweets.begin() + 600, tweets.end());
  const auto dict = corpus::Dictionary::build(train);
  std::vector<langmodel::TweetVector> train_vec;
  std::vector<langmodel::TweetVector> test_vec;
  for (const auto& t : train) train_vec.push_back(langmodel::encode_tweet(t, dict));
  for (const auto& t : test) test_vec.push_back(langmodel::encode_tweet(t, dict));

  // The 92000-way softmax dominates the cost, so the model is small and
  // each window covers exactly one tweet.
  auto cfg = langmodel::LstmConfig::preset(langmodel::Preset::medium, langmodel::InputMode::geo);
  cfg.hidden_size = 16;
  cfg.num_layers = 1;
  cfg.num_steps = langmodel::kTweetSlots;
  cfg.skip = langmodel::kTweetSlots;
  cfg.batch_size = 5;
  cfg.learning_rate = 1.0;
  cfg.lr_decay_epoch = 5;
  cfg.lr_decay_rate = 0.5;
  cfg.max_epoch = 7;
  cfg.init_scale = 0.1;
  cfg.seed = 1;
  auto model = langmodel::LstmModel::initialized(cfg);
  langmodel::train(model,
                   langmodel::SkipGramBatcher(langmodel::geo_stream(train_vec).tokens, cfg.num_steps,
                                              cfg.batch_size, cfg.skip),
                   cfg);
  const auto predicted = langmodel::predict_regions(model, test_vec);
  std::size_t lat = 0;
  std::size_t lon = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    lat += predicted[i].lat_band() == test[i].region.lat_band() ? 1 : 0;
    lon += predicted[i].lon_band() == test[i].region.lon_band() ? 1 : 0;
  }
  const double lat_acc = static_cast<double>(lat) / static_cast<double>(test.size());
  const double lon_acc = static_cast<double>(lon) / static_cast<double>(test.size());
  return {lat_acc >= 0.6 && lon_acc >= 0.6,
          fmt("latitude accuracy %.3f, longitude accuracy %.3f on %zu held-out tweets (>= 0.6)", lat_acc, lon_acc,
              test.size())};
}

// 7 ------------------------------------------------------------------------

Outcome lr_schedule() {
  struct Case {
    langmodel::Preset preset;
    double lr;
    int constant_through;
    double factor;
  };
  bool ok = true;
  std::string detail;
  for (const Case& c : {Case{langmodel::Preset::medium, 0.1, 25, 0.8},
                        Case{langmodel::Preset::large, 0.2, 30, 2.0 / 3.0}}) {
    auto cfg = langmodel::LstmConfig::preset(c.preset, langmodel::InputMode::skipgram);
    // Record the trace from a real training run on a toy model.
    cfg.vocab_size = 4;
    cfg.hidden_size = 2;
    cfg.num_layers = 1;
    cfg.num_steps = 3;
    cfg.batch_size = 2;
    std::vector<int> stream;
    for (int i = 0; i < 16; ++i) stream.push_back(i % 4);
    auto model = langmodel::LstmModel::initialized(cfg);
    const auto result =
        langmodel::train(model, langmodel::SkipGramBatcher(stream, cfg.num_steps, cfg.batch_size), cfg);

    double expected = c.lr;
    double max_pow_err = 0.0;
    bool exact = result.trace.size() == static_cast<std::size_t>(cfg.max_epoch);
    for (const auto& s : result.trace) {
      if (s.epoch > c.constant_through) expected *= c.factor;
      exact = exact && s.learning_rate == expected;
      const double closed = c.lr * std::pow(c.factor, std::max(0, s.epoch - c.constant_through));
      max_pow_err = std::max(max_pow_err, std::abs(s.learning_rate - closed) / closed);
    }
    ok = ok && exact && max_pow_err <= 1e-12;
    detail += fmt("%s: %zu epochs, last lr %.6g, max deviation from lr*r^k %.2g; ",
                  c.preset == langmodel::Preset::medium ? "medium" : "large", result.trace.size(),
                  result.trace.back().learning_rate, max_pow_err);
  }
  return {ok, detail};
}

// 8 ------------------------------------------------------------------------

Outcome metric_oracle_equivalence() {
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = testing::random_instance(seed, 50, 10);
    const auto cache = cachesim::build_cache(inst.topics, inst.train);
    const auto got = cachesim::evaluate(cache, inst.topics, inst.train, inst.test);
    const auto want = synth::oracle_metrics(inst.topics, inst.train, inst.test);
    if (got.tweet_hit_rate != want.tweet_hit_rate || got.tweet_hit_portion != want.tweet_hit_portion ||
        got.cache_portion != want.cache_portion || got.hit_cache_portion != want.hit_cache_portion) {
      ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%zu of 100 random instances differ from the oracle (exact comparison)", mismatches)};
}

// 9 ------------------------------------------------------------------------

Outcome trend_reproduction() {
  synth::CachingScenarioOptions options;
  options.seed = 1;
  const auto scenario = synth::caching_scenario(options);
  const auto tweets = corpus::ingest(scenario.corpus.raw, {}).tweets;
  const auto split = cachesim::split_by_time(tweets, scenario.split_time);
  const auto dict = corpus::Dictionary::build(split.train);

  topics::LdaConfig cfg;
  cfg.num_topics = 250;
  cfg.iterations = 100;
  cfg.seed = 3;
  cfg.convergence_window = 0;
  const auto lda = topics::train_lda(topics::to_lda_corpus(split.train, dict), cfg);
  const auto words = topics::topic_words_as_strings(topics::top_words(lda.model.estimate(), 7), dict);
  std::vector<cachesim::Topic> candidates;
  for (std::size_t k = 0; k < words.size(); ++k) candidates.push_back({"topic-" + std::to_string(k), words[k], 0});

  std::map<cachesim::Method, std::vector<cachesim::MetricsReport>> sweep;
  for (std::size_t n = 25; n <= 250; n += 25) {
    for (const auto m : {cachesim::Method::ml, cachesim::Method::lfu, cachesim::Method::lru}) {
      const auto selected = m == cachesim::Method::ml    ? cachesim::select_topics_ml(candidates, split.train, n)
                            : m == cachesim::Method::lfu ? cachesim::select_keywords_lfu(split.train, n)
                                                         : cachesim::select_keywords_lru(split.train, n);
      sweep[m].push_back(
          cachesim::evaluate(cachesim::build_cache(selected, split.train), selected, split.train, split.test));
    }
  }
  const auto& ml = sweep[cachesim::Method::ml];
  const auto& lfu = sweep[cachesim::Method::lfu];
  const auto& lru = sweep[cachesim::Method::lru];

  bool hit_rate_up = true;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < ml.size(); ++i) {
    if (i > 0 && ml[i].tweet_hit_rate < ml[i - 1].tweet_hit_rate) hit_rate_up = false;
    if (ml[i].tweet_hit_portion > ml[peak].tweet_hit_portion) peak = i;
  }
  bool portion_down = true;
  for (std::size_t i = peak + 1; i < ml.size(); ++i) {
    if (ml[i].tweet_hit_portion > ml[i - 1].tweet_hit_portion) portion_down = false;
  }
  bool cache_below = true;
  bool hit_cache_above = true;
  for (std::size_t i = 0; i < ml.size(); ++i) {
    cache_below = cache_below && ml[i].cache_portion < lfu[i].cache_portion;
    hit_cache_above = hit_cache_above && ml[i].hit_cache_portion >= lru[i].hit_cache_portion;
  }
  std::string detail = fmt("ML hit rate %.3f->%.3f non-decreasing %s; ML hit portion peak %.3f at n=%zu then "
                           "non-increasing %s; ML cache portion < LFU at all n %s; ML hit cache portion >= LRU at "
                           "all n %s",
                           ml.front().tweet_hit_rate, ml.back().tweet_hit_rate, hit_rate_up ? "yes" : "no",
                           ml[peak].tweet_hit_portion, 25 * (peak + 1), portion_down ? "yes" : "no",
                           cache_below ? "yes" : "no", hit_cache_above ? "yes" : "no");
  return {hit_rate_up && portion_down && cache_below && hit_cache_above, detail};
}

// 10 -----------------------------------------------------------------------

// Request replay written directly against reference lists.
struct ReferenceCache {
  std::size_t objects_capacity;
  testing::ReferencePriorList topics;
  std::map<std::string, testing::ReferencePriorList> objects;
  std::map<std::string, std::uint64_t> popularity;
  std::map<std::string, std::map<std::string, std::uint64_t>> usage;

  static bool listed(const testing::ReferencePriorList& pl, const std::string& key) {
    for (const auto& e : pl.ranked()) {
      if (e.key == key) return true;
    }
    return false;
  }

  void process(const cachesim::Request& r) {
    for (const auto& t : r.topic_hits) {
      std::set<std::string> before;
      for (const auto& e : topics.ranked()) before.insert(e.key);
      topics.offer(t, ++popularity[t]);
      std::set<std::string> after;
      for (const auto& e : topics.ranked()) after.insert(e.key);
      for (const auto& k : before) {
        if (!after.contains(k)) objects.erase(k);
      }
      if (!after.contains(t)) continue;
      auto& pl = objects.try_emplace(t, objects_capacity).first->second;
      for (const auto& m : r.media) {
        if (m.size_bytes > 0) pl.offer(m.url, ++usage[t][m.url]);
      }
    }
  }
};

bool same_state(const cachesim::CacheState& c, const ReferenceCache& ref,
                const std::map<std::string, std::uint64_t>& sizes) {
  if (c.topics_pl.entries() != ref.topics.ranked()) return false;
  std::set<std::string> cached;
  for (const auto& [topic, pl] : ref.objects) {
    const auto it = c.object_pls.find(topic);
    if (it == c.object_pls.end() || it->second.entries() != pl.ranked()) return false;
    for (const auto& e : pl.ranked()) cached.insert(e.key);
  }
  for (const auto& [topic, pl] : c.object_pls) {
    if (!ref.objects.contains(topic) && pl.size() > 0) return false;
  }
  std::uint64_t bytes = 0;
  for (const auto& url : cached) bytes += sizes.at(url);
  if (bytes != c.cached_bytes || cached.size() != c.cached.size()) return false;
  return std::all_of(cached.begin(), cached.end(), [&](const auto& u) { return c.is_cached(u); });
}

Outcome prior_list_replay() {
  std::size_t pl_events = 0;
  std::size_t pl_evictions = 0;
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 12 && ok; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t cap = seed % 4 == 0 ? 0 : 1 + rng() % 12;
    const std::uint64_t keys = 5 + rng() % 40;
    const std::uint64_t pops = 2 + rng() % 30;  // small ranges force ties
    cachesim::PriorList pl(cap);
    testing::ReferencePriorList ref(cap);
    for (int e = 0; e < 10000; ++e) {
      const std::string key = "k" + std::to_string(rng() % keys);
      const std::uint64_t pop = rng() % pops;
      const auto r = pl.offer(key, pop);
      ref.offer(key, pop);
      pl_evictions += r.evicted ? 1 : 0;
      ++pl_events;
      if (pl.entries() != ref.ranked()) {
        ok = false;
        break;
      }
    }
  }

  std::size_t requests = 0;
  for (std::uint64_t seed = 1; seed <= 4 && ok; ++seed) {
    std::mt19937_64 rng(100 + seed);
    cachesim::CacheOptions opts{1 + rng() % 8, 1 + rng() % 4};
    cachesim::CacheState cache(opts);
    ReferenceCache ref{opts.objects_capacity, testing::ReferencePriorList(opts.topics_capacity), {}, {}, {}};
    std::map<std::string, std::uint64_t> sizes;
    cachesim::RequestSimulator sim(cache);
    for (int e = 0; e < 10000; ++e) {
      cachesim::Request r;
      r.tweet_id = std::to_string(e);
      const int hits = static_cast<int>(rng() % 3);
      for (int h = 0; h < hits; ++h) {
        // Skewed topic choice so that popular topics displace rare ones.
        const std::string t = "t" + std::to_string(std::min(rng() % 20, rng() % 20));
        if (std::find(r.topic_hits.begin(), r.topic_hits.end(), t) == r.topic_hits.end()) r.topic_hits.push_back(t);
      }
      const int media = static_cast<int>(rng() % 3);
      for (int m = 0; m < media; ++m) {
        const std::string url = "m" + std::to_string(rng() % 30);
        const std::uint64_t size = std::hash<std::string>{}(url) % 7 == 0 ? 0 : 1 + std::hash<std::string>{}(url) % 1000;
        sizes[url] = size;
        if (std::none_of(r.media.begin(), r.media.end(), [&](const auto& x) { return x.url == url; })) {
          r.media.push_back({url, corpus::MediaKind::image, size});
        }
      }
      sim.process(r);
      ref.process(r);
      ++requests;
      if (e % 50 == 0 && !same_state(cache, ref, sizes)) {
        ok = false;
        break;
      }
    }
    ok = ok && same_state(cache, ref, sizes);
  }
  return {ok, fmt("%zu prior-list offers (%zu evictions) and %zu simulated requests match the reference replay",
                  pl_events, pl_evictions, requests)};
}

// 11 -----------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::fprintf(stderr, "  %s", err.str().c_str());
  return code;
}

Outcome end_to_end_determinism() {
  const fs::path root = fs::temp_directory_path() / ("tac_acceptance_" + std::to_string(std::random_device{}()));
  std::array<std::map<std::string, std::string>, 2> outputs;
  bool ran = true;
  for (int run = 0; run < 2 && ran; ++run) {
    const fs::path d = root / std::to_string(run);
    auto p = [&](const char* name) { return (d / name).string(); };
    ran = cli({"synth", "--scenario", "caching", "--seed", "5", "--topics", "60", "--train-tweets", "2000",
               "--burst-tweets", "50", "--test-tweets", "400", "--active-topics", "20", "--out", p("raw.jsonl"),
               "--split-out", p("split.cfg")}) == 0 &&
          cli({"ingest", "--in", p("raw.jsonl"), "--out", p("clean.jsonl")}) == 0 &&
          cli({"lda-train", "--corpus", p("clean.jsonl"), "--k", "40", "--iters", "40", "--seed", "5",
               "--perplexity-out", p("lda.csv"), "--topics-out", p("topics.txt")}) == 0 &&
          cli({"cache-eval", "--config", p("split.cfg"), "--corpus", p("clean.jsonl"), "--topics", p("topics.txt"),
               "--sweep", "10,20,30,40", "--out", p("metrics.csv"), "--churn", p("churn.jsonl")}) == 0;
    for (const char* f : {"raw.jsonl", "clean.jsonl", "lda.csv", "topics.txt", "metrics.csv", "churn.jsonl"}) {
      outputs[static_cast<std::size_t>(run)][f] = slurp(d / f);
    }
  }
  fs::remove_all(root);
  if (!ran) return {false, "pipeline command failed"};
  std::vector<std::string> differing;
  for (const auto& [name, content] : outputs[0]) {
    if (outputs[1][name] != content) differing.push_back(name);
  }
  const auto rows = std::count(outputs[0]["metrics.csv"].begin(), outputs[0]["metrics.csv"].end(), '\n');
  return {differing.empty() && rows == 13,
          differing.empty() ? fmt("6 artifacts byte-identical across two runs (%td metric rows)", rows - 1)
                            : "differs: " + differing.front()};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "perplexity identities", 1, perplexity_identities},
      {2, "LDA sweep correctness", 30, lda_sweep_correctness},
      {3, "planted-topic recovery", 120, planted_topic_recovery},
      {4, "LSTM gradient check", 60, gradient_check},
      {5, "LSTM learning", 600, lstm_learning},
      {6, "geo prediction", 600, geo_prediction},
      {7, "learning-rate schedule", 1, lr_schedule},
      {8, "metric oracle equivalence", 10, metric_oracle_equivalence},
      {9, "trend reproduction", 300, trend_reproduction},
      {10, "prior-list replay", 5, prior_list_replay},
      {11, "end-to-end determinism", 300, end_to_end_determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d: %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", too slow");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

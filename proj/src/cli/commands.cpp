#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tac/cachesim/cache.hpp"
#include "tac/cachesim/metrics.hpp"
#include "tac/cachesim/requests.hpp"
#include "tac/cachesim/selection.hpp"
#include "tac/cachesim/topic.hpp"
#include "tac/cli/svg_report.hpp"
#include "tac/common/errors.hpp"
#include "tac/corpus/dictionary.hpp"
#include "tac/corpus/ingest.hpp"
#include "tac/corpus/text_cleaner.hpp"
#include "tac/langmodel/checkpoint.hpp"
#include "tac/langmodel/geo_encoding.hpp"
#include "tac/langmodel/prediction.hpp"
#include "tac/langmodel/trainer.hpp"
#include "tac/synth/generator.hpp"
#include "tac/topics/lda.hpp"
#include "tac/topics/lda_checkpoint.hpp"
#include "tac/topics/lda_corpus.hpp"

namespace tac::cli {
namespace {

namespace fs = std::filesystem;
using cachesim::format_metric;

std::string require(const KeyValueConfig& cfg, const std::string& key) {
  const auto v = cfg.get(key);
  if (!v || v->empty()) throw ConfigError("missing required setting '" + key + "'");
  return *v;
}

std::string input_path(const KeyValueConfig& cfg, const std::string& key) {
  std::string path = require(cfg, key);
  if (!fs::is_regular_file(path)) throw DataError("no such file: " + path);
  return path;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

bool get_bool(const KeyValueConfig& cfg, const std::string& key) {
  const std::string v = cfg.get_string(key, "false");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got " + v);
}

std::int64_t get_count(const KeyValueConfig& cfg, const std::string& key, std::int64_t min_value) {
  const auto v = cfg.get_int(key, min_value);
  if (v < min_value) {
    throw ConfigError("config key '" + key + "' must be at least " + std::to_string(min_value));
  }
  return v;
}

std::size_t get_size(const KeyValueConfig& cfg, const std::string& key, std::int64_t min_value = 0) {
  return static_cast<std::size_t>(get_count(cfg, key, min_value));
}

void run_synth(const KeyValueConfig& cfg, std::ostream& log) {
  const std::string scenario = cfg.get_string("scenario", "basic");
  const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  synth::SynthCorpus corpus;
  if (scenario == "basic") {
    const std::size_t topics = cfg.contains("topics") ? get_size(cfg, "topics", 1) : 10;
    synth::GeneratorSpec spec = synth::default_spec(topics, seed);
    synth::set_affinity(spec, synth::zipf_weights(topics, cfg.get_double("zipf", 1.0)),
                        cfg.get_double("concentration", 0.8));
    spec.min_length = static_cast<int>(cfg.get_int("min-length", spec.min_length));
    spec.max_length = static_cast<int>(cfg.get_int("max-length", spec.max_length));
    spec.media_prob = cfg.get_double("media-prob", spec.media_prob);
    spec.noise_tweet_prob = cfg.get_double("noise-prob", spec.noise_tweet_prob);
    spec.validate();
    corpus = synth::generate(spec, get_size(cfg, "n"));
  } else if (scenario == "caching") {
    synth::CachingScenarioOptions o;
    o.topics = cfg.contains("topics") ? get_size(cfg, "topics", 1) : o.topics;
    o.train_tweets = get_size(cfg, "train-tweets");
    o.burst_tweets = get_size(cfg, "burst-tweets");
    o.test_tweets = get_size(cfg, "test-tweets");
    o.test_active_topics = get_size(cfg, "active-topics", 1);
    o.seed = seed;
    const auto s = synth::caching_scenario(o);
    corpus = s.corpus;
    if (const auto path = cfg.get_string("split-out", ""); !path.empty()) {
      auto out = open_out(path);
      out << "split = " << s.split_time << '\n';
    }
  } else {
    throw ConfigError("unknown scenario '" + scenario + "' (expected basic or caching)");
  }

  const std::string out_path = require(cfg, "out");
  auto out = open_out(out_path);
  corpus::write_raw_corpus(out, corpus.raw);
  std::string truth_path = cfg.get_string("truth", "");
  if (truth_path.empty()) truth_path = out_path + ".truth.jsonl";
  auto truth = open_out(truth_path);
  synth::write_truth_jsonl(truth, corpus.truth);
  log << "wrote " << corpus.raw.size() << " records to " << out_path << '\n';
}

void run_ingest(const KeyValueConfig& cfg, std::ostream& log) {
  corpus::IngestOptions opts;
  opts.box.lat_min = cfg.get_double("lat-min", opts.box.lat_min);
  opts.box.lat_max = cfg.get_double("lat-max", opts.box.lat_max);
  opts.box.lon_min = cfg.get_double("lon-min", opts.box.lon_min);
  opts.box.lon_max = cfg.get_double("lon-max", opts.box.lon_max);
  opts.box.validate();
  corpus::StopwordSet stopwords;
  if (cfg.get_string("stopwords", "").size() > 0) {
    stopwords = corpus::load_stopwords(input_path(cfg, "stopwords"));
    opts.stopwords = &stopwords;
  }
  auto in = open_in(input_path(cfg, "in"));
  const auto result = corpus::ingest(in, opts);
  auto out = open_out(require(cfg, "out"));
  corpus::write_clean_corpus(out, result.tweets);
  if (const auto path = cfg.get_string("rejects", ""); !path.empty()) {
    auto rej = open_out(path);
    for (const auto& r : result.rejected) rej << nlohmann::json{{"id", r.id}, {"reason", r.reason}}.dump() << '\n';
  }
  log << "ingested " << result.tweets.size() << " records, rejected " << result.rejected.size() << '\n';
}

void run_lda_train(const KeyValueConfig& cfg, std::ostream& log) {
  const auto tweets = corpus::read_clean_corpus_file(input_path(cfg, "corpus"));
  const auto dict = corpus::Dictionary::build(tweets, get_size(cfg, "vocab", 1));
  const auto lda_corpus = topics::to_lda_corpus(tweets, dict);

  topics::LdaConfig config;
  config.num_topics = static_cast<int>(get_count(cfg, "k", 1));
  config.iterations = static_cast<int>(get_count(cfg, "iters", 1));
  config.words_per_topic = static_cast<int>(get_count(cfg, "words", 1));
  config.alpha = cfg.get_double("alpha", 0.0);
  config.beta = cfg.get_double("beta", config.beta);
  config.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  config.convergence_tol = cfg.get_double("tol", config.convergence_tol);
  config.convergence_window = static_cast<int>(get_count(cfg, "window", 0));

  const auto result = topics::train_lda(lda_corpus, config);
  auto csv = open_out(require(cfg, "perplexity-out"));
  csv << "iteration,perplexity\n";
  for (std::size_t i = 0; i < result.perplexity_trace.size(); ++i) {
    csv << i + 1 << ',' << format_metric(result.perplexity_trace[i]) << '\n';
  }
  const auto words = topics::top_words(result.model.estimate(), config.words_per_topic);
  topics::write_topics_file(require(cfg, "topics-out"), topics::topic_words_as_strings(words, dict));
  if (const auto path = cfg.get_string("checkpoint", ""); !path.empty()) {
    auto out = open_out(path);
    topics::save_lda_checkpoint(out, result.model);
  }
  log << config.num_topics << " topics after " << result.perplexity_trace.size() << " sweeps, perplexity "
      << format_metric(result.perplexity_trace.back()) << (result.converged ? " (converged)" : "") << '\n';
}

std::vector<int> stream_for(langmodel::InputMode mode, const std::vector<corpus::Tweet>& tweets,
                            const corpus::Dictionary& dict) {
  if (mode == langmodel::InputMode::skipgram) return langmodel::plain_stream(tweets, dict);
  std::vector<langmodel::TweetVector> vectors;
  vectors.reserve(tweets.size());
  for (const auto& t : tweets) vectors.push_back(langmodel::encode_tweet(t, dict));
  return langmodel::geo_stream(vectors).tokens;
}

void run_lm_train(const KeyValueConfig& cfg, std::ostream& log) {
  using namespace langmodel;
  const InputMode mode = input_mode_from_string(cfg.get_string("mode", "skipgram"));
  LstmConfig config = LstmConfig::preset(preset_from_string(cfg.get_string("preset", "medium")), mode);
  config.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  config.hidden_size = static_cast<int>(cfg.get_int("hidden", config.hidden_size));
  config.num_layers = static_cast<int>(cfg.get_int("layers", config.num_layers));
  config.num_steps = static_cast<int>(cfg.get_int("steps", config.num_steps));
  config.batch_size = static_cast<int>(cfg.get_int("batch", config.batch_size));
  config.max_epoch = static_cast<int>(cfg.get_int("epochs", config.max_epoch));
  config.learning_rate = cfg.get_double("lr", config.learning_rate);
  config.lr_decay_epoch = static_cast<int>(cfg.get_int("decay-epoch", config.lr_decay_epoch));
  config.lr_decay_rate = cfg.get_double("decay-rate", config.lr_decay_rate);
  config.init_scale = cfg.get_double("init-scale", config.init_scale);
  config.max_grad_norm = cfg.get_double("grad-norm", config.max_grad_norm);
  config.skip = static_cast<int>(cfg.get_int("skip", config.skip));

  auto tweets = corpus::read_clean_corpus_file(input_path(cfg, "corpus"));
  std::vector<corpus::Tweet> test;
  if (cfg.contains("split")) {
    auto split = cachesim::split_by_time(tweets, cfg.get_int("split", 0));
    tweets = std::move(split.train);
    test = std::move(split.test);
  }
  const auto dict = corpus::Dictionary::build(tweets, get_size(cfg, "vocab", 1));
  if (mode == InputMode::skipgram) config.vocab_size = dict.plain_vocab_size();
  config.validate();

  const SkipGramBatcher batches(stream_for(mode, tweets, dict), config.num_steps, config.batch_size, config.skip);
  std::vector<int> eval;
  TrainOptions options;
  if (!test.empty()) {
    eval = stream_for(mode, test, dict);
    options.eval_stream = &eval;
  }
  auto csv = open_out(require(cfg, "out"));
  csv << "epoch,learning_rate,train_perplexity,test_perplexity\n";
  options.on_epoch = [&](const EpochStats& s) {
    csv << s.epoch << ',' << format_metric(s.learning_rate) << ',' << format_metric(s.train_perplexity) << ','
        << (s.test_perplexity ? format_metric(*s.test_perplexity) : "") << '\n';
    csv.flush();
    log << "epoch " << s.epoch << ": train perplexity " << format_metric(s.train_perplexity) << '\n';
  };
  LstmCheckpoint ckpt{config, mode, dict, LstmModel::initialized(config)};
  train(ckpt.model, batches, config, options);
  save_checkpoint(require(cfg, "checkpoint"), ckpt);
}

void run_lm_predict(const KeyValueConfig& cfg, std::ostream& log) {
  using namespace langmodel;
  const auto ckpt = load_checkpoint(input_path(cfg, "checkpoint"));
  const std::string out_path = cfg.get_string("out", "");
  std::ofstream file;
  if (!out_path.empty()) file = open_out(out_path);
  std::ostream& out = out_path.empty() ? log : file;

  if (get_bool(cfg, "region")) {
    if (ckpt.mode != InputMode::geo) throw ConfigError("region prediction needs a geo-mode checkpoint");
    const auto tweets = corpus::read_clean_corpus_file(input_path(cfg, "corpus"));
    std::vector<TweetVector> vectors;
    for (const auto& t : tweets) vectors.push_back(encode_tweet(t, ckpt.dictionary));
    const auto regions = predict_regions(ckpt.model, vectors);
    out << "id,region,lat_band,lon_band,true_region\n";
    std::size_t lat_hits = 0;
    std::size_t lon_hits = 0;
    for (std::size_t i = 0; i < tweets.size(); ++i) {
      out << tweets[i].id << ',' << regions[i].index() << ',' << regions[i].lat_band() << ','
          << regions[i].lon_band() << ',' << tweets[i].region.index() << '\n';
      lat_hits += regions[i].lat_band() == tweets[i].region.lat_band() ? 1 : 0;
      lon_hits += regions[i].lon_band() == tweets[i].region.lon_band() ? 1 : 0;
    }
    if (!out_path.empty() && !tweets.empty()) {
      const auto n = static_cast<double>(tweets.size());
      log << "latitude accuracy " << format_metric(static_cast<double>(lat_hits) / n) << ", longitude accuracy "
          << format_metric(static_cast<double>(lon_hits) / n) << '\n';
    }
    return;
  }

  const auto context = ckpt.dictionary.encode(
      corpus::clean_text(cfg.get_string("context", ""), corpus::default_stopwords()));
  const auto top = get_size(cfg, "top", 1);
  const auto probs = next_token_distribution(ckpt.model, context);
  out << "rank,word,probability\n";
  std::size_t rank = 0;
  for (int idx : predict_terms(ckpt.model, context, top, ckpt.dictionary.size())) {
    out << ++rank << ',' << ckpt.dictionary.word(idx) << ',' << format_metric(probs(idx)) << '\n';
  }
}

std::vector<std::size_t> sweep_list(const KeyValueConfig& cfg) {
  const auto raw = cfg.get_int_list("sweep", {});
  if (raw.empty()) throw ConfigError("sweep list is empty");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] <= 0) throw ConfigError("sweep values must be positive");
    if (i > 0 && raw[i] <= raw[i - 1]) throw ConfigError("sweep list must be strictly increasing");
    out.push_back(static_cast<std::size_t>(raw[i]));
  }
  return out;
}

std::vector<cachesim::Method> method_list(const KeyValueConfig& cfg) {
  std::string text = cfg.get_string("methods", "ml,lfu,lru");
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<cachesim::Method> out;
  for (std::string item; in >> item;) {
    const auto m = cachesim::method_from_string(item);
    if (std::find(out.begin(), out.end(), m) != out.end()) throw ConfigError("method listed twice: " + item);
    out.push_back(m);
  }
  if (out.empty()) throw ConfigError("no methods selected");
  return out;
}

void run_cache_eval(const KeyValueConfig& cfg, std::ostream& log) {
  using namespace cachesim;
  const auto sweep = sweep_list(cfg);
  const auto methods = method_list(cfg);
  if (!cfg.contains("split")) throw ConfigError("missing required setting 'split'");
  const auto split = split_by_time(corpus::read_clean_corpus_file(input_path(cfg, "corpus")),
                                   cfg.get_int("split", 0));
  std::vector<Topic> candidates;
  if (std::find(methods.begin(), methods.end(), Method::ml) != methods.end()) {
    candidates = read_topics_file(input_path(cfg, "topics"));
  }
  CacheOptions options;
  options.topics_capacity = get_size(cfg, "topics-capacity");
  options.objects_capacity = get_size(cfg, "objects-capacity");

  auto csv = open_out(require(cfg, "out"));
  std::ofstream churn;
  if (const auto path = cfg.get_string("churn", ""); !path.empty()) churn = open_out(path);
  write_metrics_csv_header(csv);
  for (const Method method : methods) {
    for (const std::size_t n : sweep) {
      std::vector<Topic> selected;
      switch (method) {
        case Method::ml: selected = select_topics_ml(candidates, split.train, n); break;
        case Method::lfu: selected = select_keywords_lfu(split.train, n); break;
        case Method::lru: selected = select_keywords_lru(split.train, n); break;
      }
      CacheState cache = build_cache(selected, split.train, options);
      write_metrics_csv_row(csv, {to_string(method), n, evaluate(cache, selected, split.train, split.test)});
      if (churn.is_open()) {
        for (const auto& e : simulate_requests(cache, requests_from_tweets(split.test, selected))) {
          churn << nlohmann::json{{"method", to_string(method)}, {"n_topics", n}, {"request", e.request},
                                  {"list", e.list}, {"action", e.action}, {"key", e.key},
                                  {"popularity", e.popularity}}.dump()
                << '\n';
        }
      }
    }
  }
  log << "evaluated " << methods.size() * sweep.size() << " sweep points on " << split.train.size() << " train / "
      << split.test.size() << " test tweets\n";
}

void run_report(const KeyValueConfig& cfg, std::ostream& log) {
  const fs::path input = input_path(cfg, "in");
  auto in = open_in(input.string());
  const auto table = read_csv(in);
  const fs::path dir = cfg.get_string("out-dir", ".");
  for (const auto& [stem, chart] : charts_for(table, input.stem().string())) {
    const auto path = (dir / (stem + ".svg")).string();
    auto out = open_out(path);
    write_svg(out, chart);
    log << "wrote " << path << '\n';
  }
}

std::string shortest(double v) { return format_metric(v); }

}  // namespace

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> table = [] {
    const corpus::BoundingBox box;
    const std::string vocab = std::to_string(corpus::Dictionary::kDefaultCapacity);
    return std::vector<CommandSpec>{
        {"synth",
         "Generate a synthetic raw corpus with a ground-truth sidecar",
         {{"scenario", "basic or caching", "basic"},
          {"n", "number of tweets (basic)", "1000"},
          {"seed", "random seed", "1"},
          {"topics", "planted topics (10 for basic, 120 for caching)", ""},
          {"zipf", "topic popularity exponent (basic)", "1"},
          {"concentration", "share of a topic's tweets in its home region (basic)", "0.8"},
          {"min-length", "shortest tweet in tokens (basic)", "4"},
          {"max-length", "longest tweet in tokens (basic)", "12"},
          {"media-prob", "share of tweets carrying media (basic)", "0.0769"},
          {"noise-prob", "share of noise tweets (basic)", "0"},
          {"train-tweets", "training tweets (caching)", "8000"},
          {"burst-tweets", "short-lived burst tweets before the split (caching)", "150"},
          {"test-tweets", "test tweets (caching)", "1500"},
          {"active-topics", "topics still active after the split (caching)", "40"},
          {"out", "raw corpus JSON-lines", "corpus.jsonl"},
          {"truth", "ground truth JSON-lines (default <out>.truth.jsonl)", ""},
          {"split-out", "write the split timestamp as a config file (caching)", ""}},
         run_synth},
        {"ingest",
         "Clean a raw JSON-lines corpus and assign regions",
         {{"in", "raw corpus JSON-lines", ""},
          {"out", "cleaned corpus JSON-lines", "clean.jsonl"},
          {"rejects", "JSON-lines list of out-of-box records", ""},
          {"stopwords", "stopword file, one word per line (default: built-in English list)", ""},
          {"lat-min", "bounding box", shortest(box.lat_min)},
          {"lat-max", "bounding box", shortest(box.lat_max)},
          {"lon-min", "bounding box", shortest(box.lon_min)},
          {"lon-max", "bounding box", shortest(box.lon_max)}},
         run_ingest},
        {"lda-train",
         "Fit an LDA topic model by collapsed Gibbs sampling",
         {{"corpus", "cleaned corpus JSON-lines", ""},
          {"k", "number of topics", "20"},
          {"iters", "maximum Gibbs sweeps", "100"},
          {"seed", "random seed", "1"},
          {"alpha", "document-topic prior (0 selects 50/k)", "0"},
          {"beta", "topic-word prior", "0.01"},
          {"words", "words reported per topic", "7"},
          {"vocab", "dictionary capacity", vocab},
          {"tol", "relative perplexity change counted as converged", "0.0001"},
          {"window", "converged sweeps in a row before stopping (0 never stops early)", "5"},
          {"perplexity-out", "per-sweep perplexity CSV", "lda_perplexity.csv"},
          {"topics-out", "topics file", "topics.txt"},
          {"checkpoint", "LDA checkpoint file", ""}},
         run_lda_train},
        {"lm-train",
         "Train an LSTM language model",
         {{"mode", "skipgram or geo", "skipgram"},
          {"preset", "medium or large", "medium"},
          {"corpus", "cleaned corpus JSON-lines", ""},
          {"seed", "random seed", "1"},
          {"split", "tweets at or after this timestamp form the test stream", ""},
          {"vocab", "dictionary capacity", vocab},
          {"hidden", "hidden units per layer (default from the preset)", ""},
          {"layers", "LSTM layers (default from the preset)", ""},
          {"steps", "unroll length (default from the preset)", ""},
          {"batch", "batch size (default from the preset)", ""},
          {"epochs", "epochs (default from the preset)", ""},
          {"lr", "initial learning rate (default from the preset)", ""},
          {"decay-epoch", "last epoch at the initial rate (default from the preset)", ""},
          {"decay-rate", "per-epoch decay factor (default from the preset)", ""},
          {"init-scale", "uniform init range (default from the preset)", ""},
          {"grad-norm", "global gradient norm clip (default from the preset)", ""},
          {"skip", "window stride", "1"},
          {"out", "per-epoch perplexity CSV", "lm_perplexity.csv"},
          {"checkpoint", "model checkpoint file", "lm.ckpt"}},
         run_lm_train},
        {"lm-predict",
         "Predict next terms or tweet regions from a trained model",
         {{"checkpoint", "model checkpoint file", ""},
          {"top", "number of terms", "20"},
          {"context", "text fed before predicting terms", ""},
          {"region", "predict the region of every tweet in --corpus", "false", true},
          {"corpus", "cleaned corpus JSON-lines (with --region)", ""},
          {"out", "CSV output (default: standard output)", ""}},
         run_lm_predict},
        {"cache-eval",
         "Sweep cache metrics over methods and topic counts",
         {{"corpus", "cleaned corpus JSON-lines", ""},
          {"topics", "topics file (needed by ml)", ""},
          {"split", "tweets before this timestamp train, the rest test", ""},
          {"methods", "comma-separated subset of ml,lfu,lru", "ml,lfu,lru"},
          {"sweep", "strictly increasing topic counts", "25,50,75,100,125,150,175,200,225,250"},
          {"topics-capacity", "topics list capacity (0 = unbounded)", "0"},
          {"objects-capacity", "per-topic object list capacity (0 = unbounded)", "0"},
          {"out", "metrics CSV", "metrics.csv"},
          {"churn", "JSON-lines churn log of the replayed test requests", ""}},
         run_cache_eval},
        {"report",
         "Render a CSV from this tool as SVG charts",
         {{"in", "CSV file", ""}, {"out-dir", "output directory", "."}},
         run_report},
    };
  }();
  return table;
}

}  // namespace tac::cli

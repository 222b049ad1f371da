#include "tac/langmodel/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tac/common/errors.hpp"
#include "tac/corpus/dictionary.hpp"
#include "tac/corpus/region.hpp"

namespace tac::langmodel {

Eigen::VectorXd next_token_distribution(const LstmModel& model, const std::vector<int>& context) {
  LstmState state = LstmState::zeros(model);
  Eigen::VectorXd logits;
  if (context.empty()) {
    logits = lstm_step(model, state, corpus::Dictionary::kUnk).logits;
  }
  for (int token : context) {
    StepOutput step = lstm_step(model, state, token);
    state = std::move(step.state);
    logits = std::move(step.logits);
  }
  return softmax(logits);
}

std::vector<int> predict_terms(const LstmModel& model, const std::vector<int>& context,
                               std::size_t top_n, std::size_t word_count) {
  const Eigen::VectorXd p = next_token_distribution(model, context);
  std::vector<int> candidates;
  const auto limit = static_cast<int>(word_count > 0 ? std::min(word_count + 1, model.vocab_size())
                                                     : model.vocab_size());
  for (int idx = 1; idx < limit; ++idx) {
    if (!corpus::is_geo_token(idx)) candidates.push_back(idx);
  }
  const std::size_t take = std::min(top_n, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(),
                    [&](int a, int b) { return p(a) > p(b) || (p(a) == p(b) && a < b); });
  candidates.resize(take);
  return candidates;
}

corpus::RegionId predict_region(const Eigen::MatrixXd& block) {
  if (block.rows() != kTweetSlots || block.cols() != static_cast<Eigen::Index>(corpus::Dictionary::kGeoVocabSize)) {
    throw DataError("region prediction needs a 22 x 92000 block");
  }
  for (Eigen::Index r = 0; r < block.rows(); ++r) {
    if (std::abs(block.row(r).sum() - 1.0) > 1e-6) {
      throw DataError("row " + std::to_string(r) + " of the distribution block is not normalized");
    }
  }
  auto best_band = [&](int base) {
    int best = 0;
    double best_mass = -1.0;
    for (int band = 0; band < 3; ++band) {
      const double mass = block.col(base + band).sum();
      if (mass > best_mass) {
        best_mass = mass;
        best = band;
      }
    }
    return best;
  };
  return corpus::RegionId(best_band(corpus::kLatTokenBase), best_band(corpus::kLonTokenBase));
}

RegionPredictor::RegionPredictor(const LstmModel& model)
    : model_(model), history_(LstmState::zeros(model)) {
  StepOutput start = lstm_step(model_, history_, corpus::Dictionary::kUnk);
  history_ = std::move(start.state);
  next_probs_ = softmax(start.logits);
}

Eigen::MatrixXd RegionPredictor::next_block(const TweetVector& tweet) {
  Eigen::MatrixXd block(kTweetSlots, static_cast<Eigen::Index>(model_.vocab_size()));
  block.row(0) = next_probs_.transpose();
  LstmState state = history_;
  for (int slot = 0; slot < kTweetWords; ++slot) {
    StepOutput step = lstm_step(model_, state, tweet[static_cast<std::size_t>(slot)]);
    state = std::move(step.state);
    block.row(slot + 1) = softmax(step.logits).transpose();
  }
  // The longitude row is conditioned on the decoded latitude band, never on
  // the tweet's own latitude token.
  int lat_band = 0;
  for (int band = 1; band < 3; ++band) {
    if (block.col(corpus::kLatTokenBase + band).topRows(kTweetSlots - 1).sum() >
        block.col(corpus::kLatTokenBase + lat_band).topRows(kTweetSlots - 1).sum()) {
      lat_band = band;
    }
  }
  const StepOutput decoded = lstm_step(model_, state, corpus::kLatTokenBase + lat_band);
  block.row(kTweetSlots - 1) = softmax(decoded.logits).transpose();

  StepOutput lat = lstm_step(model_, state, tweet[kTweetWords]);
  StepOutput lon = lstm_step(model_, lat.state, tweet[kTweetWords + 1]);
  history_ = std::move(lon.state);
  next_probs_ = softmax(lon.logits);
  return block;
}

std::vector<corpus::RegionId> predict_regions(const LstmModel& model,
                                              const std::vector<TweetVector>& tweets) {
  RegionPredictor predictor(model);
  std::vector<corpus::RegionId> out;
  out.reserve(tweets.size());
  for (const auto& tweet : tweets) out.push_back(predict_region(predictor.next_block(tweet)));
  return out;
}

}  // namespace tac::langmodel

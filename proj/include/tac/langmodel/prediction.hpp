#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tac/corpus/types.hpp"
#include "tac/langmodel/geo_encoding.hpp"
#include "tac/langmodel/lstm.hpp"

namespace tac::langmodel {

// Next-token distribution after feeding `context` from a zero state (an
// empty context feeds a single UNK).
Eigen::VectorXd next_token_distribution(const LstmModel& model, const std::vector<int>& context);

/// Word indices ranked by next-token probability after `context`, ties to
/// the lower index. UNK and geo tokens never appear; `word_count` > 0 also
/// restricts candidates to dictionary indices 1..word_count.
std::vector<int> predict_terms(const LstmModel& model, const std::vector<int>& context,
                               std::size_t top_n, std::size_t word_count = 0);

/// Region from one tweet block of predicted distributions (22 rows, one per
/// slot, 92000 columns). Each latitude column is summed over the rows and
/// the largest sum wins, ties to the lower band; longitude likewise. Throws
/// DataError on a wrong shape or a row that does not sum to 1 within 1e-6.
corpus::RegionId predict_region(const Eigen::MatrixXd& block);

/// Predicted distribution block for every tweet of a chronological stream.
/// Row r of tweet j predicts slot r of tweet j given all earlier tweets in
/// full and the words of tweet j. Tweet j's own geo tokens are never fed:
/// the longitude row follows the latitude band decoded from rows 0..20.
class RegionPredictor {
 public:
  explicit RegionPredictor(const LstmModel& model);

  // Block for the next tweet; advances the history by the whole tweet.
  Eigen::MatrixXd next_block(const TweetVector& tweet);

 private:
  const LstmModel& model_;
  LstmState history_;
  Eigen::VectorXd next_probs_;
};

std::vector<corpus::RegionId> predict_regions(const LstmModel& model,
                                              const std::vector<TweetVector>& tweets);

}  // namespace tac::langmodel

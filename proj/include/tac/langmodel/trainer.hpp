#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tac/langmodel/batching.hpp"
#include "tac/langmodel/lstm.hpp"

namespace tac::langmodel {

struct WindowLoss {
  double loss = 0.0;  // sum over steps of cross-entropy (nats), averaged over the batch
  double sum_log2_q = 0.0;
  std::size_t tokens = 0;
};

/// Forward and backward pass over one batch of windows (truncated BPTT).
///
/// `grads` is reshaped to match `model` and overwritten with d loss / d
/// parameter. When `carry` is given it receives the state after the first
/// `carry_after` steps, i.e. the correct initial state for a window that
/// starts `carry_after` tokens later.
WindowLoss compute_gradients(const LstmModel& model, const Batch& batch, const LstmState& initial,
                             LstmModel& grads, LstmState* carry = nullptr, int carry_after = 0);

double global_norm(const LstmModel& grads);
// Rescales so the global norm is at most `max_norm`; returns the norm before.
double clip_global_norm(LstmModel& grads, double max_norm);
void sgd_update(LstmModel& model, const LstmModel& grads, double learning_rate);

struct EpochStats {
  int epoch = 0;
  double learning_rate = 0.0;
  double train_perplexity = 0.0;
  std::optional<double> test_perplexity;
};

struct TrainOptions {
  const std::vector<int>* eval_stream = nullptr;
  std::function<void(const EpochStats&)> on_epoch;
};

struct TrainResult {
  std::vector<EpochStats> trace;
};

/// Plain SGD on clipped gradients with the staged learning-rate schedule.
/// State is reset to zero at every epoch start and carried between
/// consecutive windows. Throws NumericError naming the epoch and batch if
/// the loss stops being finite.
TrainResult train(LstmModel& model, const SkipGramBatcher& batches, const LstmConfig& config,
                  const TrainOptions& options = {});

// 2^(mean -log2 q(next token)) over a single pass from a zero state.
// Throws DataError for streams with fewer than two tokens.
double lm_perplexity(const LstmModel& model, const std::vector<int>& stream);

}  // namespace tac::langmodel

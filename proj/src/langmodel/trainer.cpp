#include "tac/langmodel/trainer.hpp"

#include <cmath>
#include <string>

#include "tac/common/errors.hpp"
#include "tac/common/perplexity.hpp"

namespace tac::langmodel {
namespace {

std::vector<Eigen::MatrixXd*> tensors(LstmModel& m) {
  std::vector<Eigen::MatrixXd*> out;
  m.for_each_tensor([&](Eigen::MatrixXd& t) { out.push_back(&t); });
  return out;
}

std::vector<const Eigen::MatrixXd*> tensors(const LstmModel& m) {
  std::vector<const Eigen::MatrixXd*> out;
  m.for_each_tensor([&](const Eigen::MatrixXd& t) { out.push_back(&t); });
  return out;
}

void shape_like(const LstmModel& model, LstmModel& grads) {
  if (grads.vocab_size() != model.vocab_size() || grads.hidden_size() != model.hidden_size() ||
      grads.num_layers() != model.num_layers()) {
    grads = LstmModel(model.vocab_size(), model.hidden_size(), model.num_layers());
  } else {
    grads.set_zero();
  }
}

}  // namespace

WindowLoss compute_gradients(const LstmModel& model, const Batch& batch, const LstmState& initial,
                             LstmModel& grads, LstmState* carry, int carry_after) {
  const int T = batch.num_steps;
  const int B = batch.batch_size;
  const int L = model.num_layers();
  const Eigen::Index H = model.hidden_size();
  const auto V = static_cast<int>(model.vocab_size());
  if (initial.batch() != B || static_cast<int>(initial.h.size()) != L) {
    throw std::invalid_argument("initial state does not match batch");
  }
  for (std::size_t i = 0; i < batch.inputs.size(); ++i) {
    if (batch.inputs[i] < 0 || batch.inputs[i] >= V || batch.targets[i] < 0 || batch.targets[i] >= V) {
      throw std::out_of_range("token index outside vocabulary");
    }
  }
  shape_like(model, grads);

  std::vector<std::vector<CellActivations>> acts(static_cast<std::size_t>(L),
                                                 std::vector<CellActivations>(static_cast<std::size_t>(T)));
  std::vector<Eigen::MatrixXd> dh_top(static_cast<std::size_t>(T));
  WindowLoss result;

  auto h_prev_of = [&](int l, int t) -> const Eigen::MatrixXd& {
    return t == 0 ? initial.h[static_cast<std::size_t>(l)]
                  : acts[static_cast<std::size_t>(l)][static_cast<std::size_t>(t - 1)].h;
  };
  auto c_prev_of = [&](int l, int t) -> const Eigen::MatrixXd& {
    return t == 0 ? initial.c[static_cast<std::size_t>(l)]
                  : acts[static_cast<std::size_t>(l)][static_cast<std::size_t>(t - 1)].c;
  };

  Eigen::MatrixXd x(H, B);
  Eigen::MatrixXd dlogits(V, B);
  const double inv_batch = 1.0 / B;

  for (int t = 0; t < T; ++t) {
    for (int b = 0; b < B; ++b) x.col(b) = model.embedding.row(batch.input(b, t)).transpose();
    for (int l = 0; l < L; ++l) {
      auto& a = acts[static_cast<std::size_t>(l)][static_cast<std::size_t>(t)];
      lstm_cell_forward(model.gate_weights[static_cast<std::size_t>(l)],
                        model.gate_biases[static_cast<std::size_t>(l)],
                        l == 0 ? x : acts[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(t)].h,
                        h_prev_of(l, t), c_prev_of(l, t), a);
    }
    if (carry && t == carry_after - 1) {
      carry->h.clear();
      carry->c.clear();
      for (int l = 0; l < L; ++l) {
        carry->h.push_back(acts[static_cast<std::size_t>(l)][static_cast<std::size_t>(t)].h);
        carry->c.push_back(acts[static_cast<std::size_t>(l)][static_cast<std::size_t>(t)].c);
      }
    }

    const Eigen::MatrixXd& top = acts[static_cast<std::size_t>(L - 1)][static_cast<std::size_t>(t)].h;
    dlogits.noalias() = model.proj_weights * top;
    dlogits.colwise() += model.proj_bias.col(0);
    for (int b = 0; b < B; ++b) {
      auto col = dlogits.col(b).array();
      const int target = batch.target(b, t);
      const double m = col.maxCoeff();
      const double target_logit = col(target);
      col = (col - m).exp();
      const double z = col.sum();
      const double log_q = target_logit - m - std::log(z);
      result.loss -= log_q * inv_batch;
      result.sum_log2_q += log_q / std::log(2.0);
      ++result.tokens;
      col *= inv_batch / z;
      col(target) -= inv_batch;
    }
    grads.proj_weights.noalias() += dlogits * top.transpose();
    grads.proj_bias.col(0) += dlogits.rowwise().sum();
    dh_top[static_cast<std::size_t>(t)].noalias() = model.proj_weights.transpose() * dlogits;
  }
  if (carry && carry_after > T) {
    carry->h.clear();
    carry->c.clear();
    for (int l = 0; l < L; ++l) {
      carry->h.push_back(acts[static_cast<std::size_t>(l)].back().h);
      carry->c.push_back(acts[static_cast<std::size_t>(l)].back().c);
    }
  }

  std::vector<Eigen::MatrixXd> dh_next(static_cast<std::size_t>(L), Eigen::MatrixXd::Zero(H, B));
  std::vector<Eigen::MatrixXd> dc_next(static_cast<std::size_t>(L), Eigen::MatrixXd::Zero(H, B));
  Eigen::MatrixXd dz(4 * H, B);
  Eigen::MatrixXd dh_above;
  for (int t = T - 1; t >= 0; --t) {
    dh_above = dh_top[static_cast<std::size_t>(t)];
    for (int l = L - 1; l >= 0; --l) {
      const auto Ls = static_cast<std::size_t>(l);
      const auto& a = acts[Ls][static_cast<std::size_t>(t)];
      const auto& W = model.gate_weights[Ls];
      const Eigen::MatrixXd& c_prev = c_prev_of(l, t);
      const Eigen::MatrixXd& h_prev = h_prev_of(l, t);
      const auto i = a.gates.topRows(H).array();
      const auto f = a.gates.middleRows(H, H).array();
      const auto g = a.gates.middleRows(2 * H, H).array();
      const auto o = a.gates.bottomRows(H).array();

      const Eigen::ArrayXXd dh = dh_above.array() + dh_next[Ls].array();
      const Eigen::ArrayXXd dc = dc_next[Ls].array() + dh * o * (1.0 - a.tanh_c.array().square());
      dz.topRows(H) = (dc * g * i * (1.0 - i)).matrix();
      dz.middleRows(H, H) = (dc * c_prev.array() * f * (1.0 - f)).matrix();
      dz.middleRows(2 * H, H) = (dc * i * (1.0 - g.square())).matrix();
      dz.bottomRows(H) = (dh * a.tanh_c.array() * o * (1.0 - o)).matrix();
      dc_next[Ls] = (dc * f).matrix();

      const Eigen::Index in = a.input.rows();
      grads.gate_weights[Ls].leftCols(in).noalias() += dz * a.input.transpose();
      grads.gate_weights[Ls].rightCols(H).noalias() += dz * h_prev.transpose();
      grads.gate_biases[Ls].col(0) += dz.rowwise().sum();
      dh_next[Ls].noalias() = W.rightCols(H).transpose() * dz;
      dh_above.noalias() = W.leftCols(in).transpose() * dz;
    }
    for (int b = 0; b < B; ++b) {
      grads.embedding.row(batch.input(b, t)) += dh_above.col(b).transpose();
    }
  }
  return result;
}

double global_norm(const LstmModel& grads) {
  double sq = 0.0;
  for (const auto* t : tensors(grads)) sq += t->squaredNorm();
  return std::sqrt(sq);
}

double clip_global_norm(LstmModel& grads, double max_norm) {
  const double norm = global_norm(grads);
  if (norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto* t : tensors(grads)) *t *= scale;
  }
  return norm;
}

void sgd_update(LstmModel& model, const LstmModel& grads, double learning_rate) {
  auto params = tensors(model);
  const auto deltas = tensors(grads);
  for (std::size_t i = 0; i < params.size(); ++i) *params[i] -= learning_rate * *deltas[i];
}

TrainResult train(LstmModel& model, const SkipGramBatcher& batches, const LstmConfig& config,
                  const TrainOptions& options) {
  config.validate();
  if (model.vocab_size() != config.vocab_size || model.hidden_size() != config.hidden_size ||
      model.num_layers() != config.num_layers) {
    throw ConfigError("model shape does not match the training config");
  }
  TrainResult result;
  LstmModel grads(model.vocab_size(), model.hidden_size(), model.num_layers());
  const int carry_after = batches.skip();

  for (int epoch = 1; epoch <= config.max_epoch; ++epoch) {
    const double lr = config.learning_rate_at(epoch);
    LstmState state = LstmState::zeros(model, batches.batch_size());
    LstmState next;
    double sum_log2_q = 0.0;
    std::size_t tokens = 0;
    for (std::size_t i = 0; i < batches.size(); ++i) {
      const WindowLoss w = compute_gradients(model, batches[i], state, grads, &next, carry_after);
      if (!std::isfinite(w.loss)) {
        throw NumericError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                           std::to_string(i + 1));
      }
      clip_global_norm(grads, config.max_grad_norm);
      sgd_update(model, grads, lr);
      state = std::move(next);
      sum_log2_q += w.sum_log2_q;
      tokens += w.tokens;
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.learning_rate = lr;
    stats.train_perplexity = std::exp2(-sum_log2_q / static_cast<double>(tokens));
    if (!std::isfinite(stats.train_perplexity) || !model.all_finite()) {
      throw NumericError("non-finite parameters after epoch " + std::to_string(epoch));
    }
    if (options.eval_stream) stats.test_perplexity = lm_perplexity(model, *options.eval_stream);
    result.trace.push_back(stats);
    if (options.on_epoch) options.on_epoch(stats);
  }
  return result;
}

double lm_perplexity(const LstmModel& model, const std::vector<int>& stream) {
  if (stream.size() < 2) throw DataError("perplexity needs at least two tokens");
  PerplexityAccumulator acc;
  LstmState state = LstmState::zeros(model);
  const double inv_ln2 = 1.0 / std::log(2.0);
  for (std::size_t i = 0; i + 1 < stream.size(); ++i) {
    StepOutput step = lstm_step(model, state, stream[i]);
    const int next = stream[i + 1];
    if (next < 0 || static_cast<std::size_t>(next) >= model.vocab_size()) {
      throw std::out_of_range("token index outside vocabulary");
    }
    const double m = step.logits.maxCoeff();
    const double lse = m + std::log((step.logits.array() - m).exp().sum());
    acc.add_log2((step.logits(next) - lse) * inv_ln2);
    state = std::move(step.state);
  }
  const double ppl = acc.value();
  if (!std::isfinite(ppl)) throw NumericError("non-finite perplexity");
  return ppl;
}

}  // namespace tac::langmodel

#include "tac/langmodel/lstm.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "tac/common/errors.hpp"
#include "tac/corpus/dictionary.hpp"

namespace tac::langmodel {

const char* to_string(InputMode mode) { return mode == InputMode::geo ? "geo" : "skipgram"; }

InputMode input_mode_from_string(const std::string& text) {
  if (text == "skipgram") return InputMode::skipgram;
  if (text == "geo") return InputMode::geo;
  throw ConfigError("unknown input mode '" + text + "' (expected skipgram or geo)");
}

Preset preset_from_string(const std::string& text) {
  if (text == "medium") return Preset::medium;
  if (text == "large") return Preset::large;
  throw ConfigError("unknown preset '" + text + "' (expected medium or large)");
}

LstmConfig LstmConfig::preset(Preset preset, InputMode mode) {
  LstmConfig c;
  const bool geo = mode == InputMode::geo;
  if (preset == Preset::medium) {
    c.init_scale = 0.04;
    c.learning_rate = 0.1;
    c.max_grad_norm = 5.0;
    c.num_layers = 2;
    c.num_steps = geo ? 50 : 20;
    c.hidden_size = 650;
    c.max_epoch = geo ? 45 : 65;
    c.lr_decay_epoch = 25;
    c.lr_decay_rate = 0.8;
  } else {
    c.init_scale = 0.05;
    c.learning_rate = 0.2;
    c.max_grad_norm = 10.0;
    c.num_layers = 3;
    c.num_steps = geo ? 100 : 50;
    c.hidden_size = geo ? 1000 : 1500;
    c.max_epoch = 55;
    c.lr_decay_epoch = 30;
    c.lr_decay_rate = 2.0 / 3.0;
  }
  c.batch_size = 20;
  c.vocab_size = geo ? corpus::Dictionary::kGeoVocabSize : corpus::Dictionary::kDefaultCapacity + 1;
  return c;
}

double LstmConfig::learning_rate_at(int epoch) const {
  double lr = learning_rate;
  for (int e = lr_decay_epoch + 1; e <= epoch; ++e) lr *= lr_decay_rate;
  return lr;
}

void LstmConfig::validate() const {
  if (!(init_scale > 0) || !(learning_rate > 0) || !(max_grad_norm > 0) || !(lr_decay_rate > 0)) {
    throw ConfigError("LSTM scales, rates and norms must be positive");
  }
  if (num_layers < 1 || num_steps < 1 || hidden_size < 1 || max_epoch < 1 || lr_decay_epoch < 1 ||
      batch_size < 1 || skip < 1) {
    throw ConfigError("LSTM sizes and epoch counts must be positive");
  }
  if (vocab_size < 2) throw ConfigError("LSTM vocabulary needs at least two tokens");
}

LstmModel::LstmModel(std::size_t vocab_size, int hidden_size, int num_layers) {
  const auto V = static_cast<Eigen::Index>(vocab_size);
  const Eigen::Index H = hidden_size;
  embedding = Eigen::MatrixXd::Zero(V, H);
  for (int l = 0; l < num_layers; ++l) {
    gate_weights.push_back(Eigen::MatrixXd::Zero(4 * H, 2 * H));
    gate_biases.push_back(Eigen::MatrixXd::Zero(4 * H, 1));
  }
  proj_weights = Eigen::MatrixXd::Zero(V, H);
  proj_bias = Eigen::MatrixXd::Zero(V, 1);
}

LstmModel LstmModel::initialized(const LstmConfig& config) {
  config.validate();
  LstmModel model(config.vocab_size, config.hidden_size, config.num_layers);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> dist(-config.init_scale, config.init_scale);
  model.for_each_tensor([&](Eigen::MatrixXd& t) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      for (Eigen::Index i = 0; i < t.rows(); ++i) t(i, j) = dist(rng);
    }
  });
  return model;
}

std::size_t LstmModel::parameter_count() const {
  std::size_t n = 0;
  for_each_tensor([&](const Eigen::MatrixXd& t) { n += static_cast<std::size_t>(t.size()); });
  return n;
}

bool LstmModel::all_finite() const {
  bool ok = true;
  for_each_tensor([&](const Eigen::MatrixXd& t) { ok = ok && t.allFinite(); });
  return ok;
}

void LstmModel::set_zero() {
  for_each_tensor([](Eigen::MatrixXd& t) { t.setZero(); });
}

LstmState LstmState::zeros(const LstmModel& model, int batch) {
  LstmState s;
  for (int l = 0; l < model.num_layers(); ++l) {
    s.h.push_back(Eigen::MatrixXd::Zero(model.hidden_size(), batch));
    s.c.push_back(Eigen::MatrixXd::Zero(model.hidden_size(), batch));
  }
  return s;
}

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

void lstm_cell_forward(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& bias,
                       const Eigen::MatrixXd& x, const Eigen::MatrixXd& h_prev,
                       const Eigen::MatrixXd& c_prev, CellActivations& out) {
  const Eigen::Index H = h_prev.rows();
  const Eigen::Index in = x.rows();
  out.input = x;
  out.gates.noalias() = weights.leftCols(in) * x;
  out.gates.noalias() += weights.rightCols(H) * h_prev;
  out.gates.colwise() += bias.col(0);
  auto gates = out.gates.array();
  gates.topRows(2 * H) = gates.topRows(2 * H).unaryExpr(&sigmoid);
  gates.middleRows(2 * H, H) = gates.middleRows(2 * H, H).tanh();
  gates.bottomRows(H) = gates.bottomRows(H).unaryExpr(&sigmoid);

  out.c = (out.gates.middleRows(H, H).array() * c_prev.array() +
           out.gates.topRows(H).array() * out.gates.middleRows(2 * H, H).array())
              .matrix();
  out.tanh_c = out.c.array().tanh().matrix();
  out.h = (out.gates.bottomRows(H).array() * out.tanh_c.array()).matrix();
}

StepOutput lstm_step(const LstmModel& model, const LstmState& state, int token) {
  if (token < 0 || static_cast<std::size_t>(token) >= model.vocab_size()) {
    throw std::out_of_range("token index " + std::to_string(token) + " outside vocabulary");
  }
  StepOutput out;
  Eigen::MatrixXd x = model.embedding.row(token).transpose();
  CellActivations act;
  for (int l = 0; l < model.num_layers(); ++l) {
    const auto L = static_cast<std::size_t>(l);
    lstm_cell_forward(model.gate_weights[L], model.gate_biases[L], x, state.h[L], state.c[L], act);
    out.state.h.push_back(act.h);
    out.state.c.push_back(act.c);
    x = act.h;
  }
  out.logits = model.proj_weights * x.col(0) + model.proj_bias.col(0);
  return out;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd p = (logits.array() - logits.maxCoeff()).exp().matrix();
  p /= p.sum();
  return p;
}

Eigen::VectorXd log_softmax(const Eigen::VectorXd& logits) {
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());
  return (logits.array() - lse).matrix();
}

}  // namespace tac::langmodel

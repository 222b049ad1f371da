#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tac::langmodel {

enum class InputMode { skipgram, geo };

const char* to_string(InputMode mode);
InputMode input_mode_from_string(const std::string& text);  // throws ConfigError

enum class Preset { medium, large };

Preset preset_from_string(const std::string& text);  // throws ConfigError

struct LstmConfig {
  double init_scale = 0.04;
  double learning_rate = 0.1;
  double max_grad_norm = 5.0;
  int num_layers = 2;
  int num_steps = 20;  // unroll length
  int hidden_size = 650;
  int max_epoch = 65;
  int lr_decay_epoch = 25;
  double lr_decay_rate = 0.8;
  int batch_size = 20;
  std::size_t vocab_size = 60001;
  std::uint64_t seed = 1;
  int skip = 1;  // window stride; 1 gives fully overlapping windows

  // Published hyperparameter columns; plain mode covers a 60000-word table
  // plus UNK, geo mode the 92000-wide token space.
  static LstmConfig preset(Preset preset, InputMode mode);

  // Learning rate for a 1-based epoch: constant through `lr_decay_epoch`,
  // then multiplied by `lr_decay_rate` once per further epoch.
  double learning_rate_at(int epoch) const;

  void validate() const;  // throws ConfigError
};

// Gate rows inside a layer's stacked weight matrix.
enum Gate : int { kInputGate = 0, kForgetGate = 1, kCandidate = 2, kOutputGate = 3 };

/// Multi-layer LSTM language model.
///
/// Every tensor is a dense matrix (biases are single-column) so training
/// code can treat parameters and gradients uniformly. Layer `l` maps
/// [x; h_prev] to the four stacked gate pre-activations.
class LstmModel {
 public:
  LstmModel() = default;
  // All-zero parameters.
  LstmModel(std::size_t vocab_size, int hidden_size, int num_layers);
  // Uniform in [-init_scale, init_scale], drawn from `config.seed`.
  static LstmModel initialized(const LstmConfig& config);

  std::size_t vocab_size() const { return static_cast<std::size_t>(embedding.rows()); }
  int hidden_size() const { return static_cast<int>(embedding.cols()); }
  int num_layers() const { return static_cast<int>(gate_weights.size()); }

  template <typename F>
  void for_each_tensor(F&& f) {
    f(embedding);
    for (std::size_t l = 0; l < gate_weights.size(); ++l) {
      f(gate_weights[l]);
      f(gate_biases[l]);
    }
    f(proj_weights);
    f(proj_bias);
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    f(embedding);
    for (std::size_t l = 0; l < gate_weights.size(); ++l) {
      f(gate_weights[l]);
      f(gate_biases[l]);
    }
    f(proj_weights);
    f(proj_bias);
  }

  std::size_t parameter_count() const;
  bool all_finite() const;
  void set_zero();

  Eigen::MatrixXd embedding;                  // vocab x hidden
  std::vector<Eigen::MatrixXd> gate_weights;  // per layer: 4*hidden x 2*hidden
  std::vector<Eigen::MatrixXd> gate_biases;   // per layer: 4*hidden x 1
  Eigen::MatrixXd proj_weights;               // vocab x hidden
  Eigen::MatrixXd proj_bias;                  // vocab x 1
};

// Hidden and cell state of every layer for a batch; columns are sequences.
struct LstmState {
  std::vector<Eigen::MatrixXd> h;
  std::vector<Eigen::MatrixXd> c;

  static LstmState zeros(const LstmModel& model, int batch = 1);
  int batch() const { return h.empty() ? 0 : static_cast<int>(h.front().cols()); }
};

// Activations of one layer at one step, kept for backpropagation.
struct CellActivations {
  Eigen::MatrixXd input;   // x (in x batch)
  Eigen::MatrixXd gates;   // post-nonlinearity i, f, g, o stacked (4h x batch)
  Eigen::MatrixXd c;       // new cell state
  Eigen::MatrixXd tanh_c;  // tanh(c)
  Eigen::MatrixXd h;       // new hidden state
};

// One cell update: f = s(Wf[h;x]+bf), i = s(Wi[h;x]+bi), g = tanh(Wc[h;x]+bc),
// c' = f*c + i*g, o = s(Wo[h;x]+bo), h' = o*tanh(c').
void lstm_cell_forward(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& bias,
                       const Eigen::MatrixXd& x, const Eigen::MatrixXd& h_prev,
                       const Eigen::MatrixXd& c_prev, CellActivations& out);

struct StepOutput {
  Eigen::VectorXd logits;
  LstmState state;
};

// Single-sequence step; throws std::out_of_range for a token outside the
// vocabulary.
StepOutput lstm_step(const LstmModel& model, const LstmState& state, int token);

// Numerically stable softmax / log-softmax of a logit vector.
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);
Eigen::VectorXd log_softmax(const Eigen::VectorXd& logits);

}  // namespace tac::langmodel

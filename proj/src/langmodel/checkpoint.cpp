#include "tac/langmodel/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "tac/common/errors.hpp"

namespace tac::langmodel {
namespace {

constexpr std::array<char, 8> kMagic = {'T', 'A', 'C', 'L', 'S', 'T', 'M', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw DataError("LSTM checkpoint is truncated");
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[static_cast<std::size_t>(i)];
  return v;
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void put_i64(std::ostream& out, std::int64_t v) { put_u64(out, static_cast<std::uint64_t>(v)); }
std::int64_t get_i64(std::istream& in) { return static_cast<std::int64_t>(get_u64(in)); }

void put_string(std::ostream& out, const std::string& s) {
  put_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
  const std::uint64_t n = get_u64(in);
  if (n > (1u << 20)) throw DataError("LSTM checkpoint has an implausible string length");
  std::string s(n, '\0');
  if (!in.read(s.data(), static_cast<std::streamsize>(n))) throw DataError("LSTM checkpoint is truncated");
  return s;
}

void put_tensor(std::ostream& out, const Eigen::MatrixXd& m) {
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) put_f64(out, m(r, c));
  }
}

void get_tensor(std::istream& in, Eigen::MatrixXd& m) {
  const auto rows = static_cast<Eigen::Index>(get_u64(in));
  const auto cols = static_cast<Eigen::Index>(get_u64(in));
  if (rows != m.rows() || cols != m.cols()) {
    throw DataError("LSTM checkpoint tensor shape does not match its config");
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = get_f64(in);
  }
}

}  // namespace

void write_checkpoint(std::ostream& out, const LstmCheckpoint& ck) {
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, kVersion);
  const LstmConfig& c = ck.config;
  put_f64(out, c.init_scale);
  put_f64(out, c.learning_rate);
  put_f64(out, c.max_grad_norm);
  put_i64(out, c.num_layers);
  put_i64(out, c.num_steps);
  put_i64(out, c.hidden_size);
  put_i64(out, c.max_epoch);
  put_i64(out, c.lr_decay_epoch);
  put_f64(out, c.lr_decay_rate);
  put_i64(out, c.batch_size);
  put_u64(out, c.vocab_size);
  put_u64(out, c.seed);
  put_i64(out, c.skip);
  put_u64(out, ck.mode == InputMode::geo ? 1 : 0);
  put_u64(out, ck.dictionary.capacity());
  put_u64(out, ck.dictionary.size());
  for (const auto& w : ck.dictionary.words()) put_string(out, w);
  put_u64(out, static_cast<std::uint64_t>(ck.model.num_layers()));
  put_u64(out, static_cast<std::uint64_t>(ck.model.hidden_size()));
  put_u64(out, ck.model.vocab_size());
  ck.model.for_each_tensor([&](const Eigen::MatrixXd& t) { put_tensor(out, t); });
  if (!out) throw DataError("failed writing LSTM checkpoint");
}

void save_checkpoint(const std::filesystem::path& path, const LstmCheckpoint& checkpoint) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_checkpoint(out, checkpoint);
}

LstmCheckpoint read_checkpoint(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw DataError("not an LSTM checkpoint");
  }
  if (const auto version = get_u64(in); version != kVersion) {
    throw DataError("unsupported LSTM checkpoint version " + std::to_string(version));
  }
  LstmCheckpoint ck;
  LstmConfig& c = ck.config;
  c.init_scale = get_f64(in);
  c.learning_rate = get_f64(in);
  c.max_grad_norm = get_f64(in);
  c.num_layers = static_cast<int>(get_i64(in));
  c.num_steps = static_cast<int>(get_i64(in));
  c.hidden_size = static_cast<int>(get_i64(in));
  c.max_epoch = static_cast<int>(get_i64(in));
  c.lr_decay_epoch = static_cast<int>(get_i64(in));
  c.lr_decay_rate = get_f64(in);
  c.batch_size = static_cast<int>(get_i64(in));
  c.vocab_size = get_u64(in);
  c.seed = get_u64(in);
  c.skip = static_cast<int>(get_i64(in));
  ck.mode = get_u64(in) == 1 ? InputMode::geo : InputMode::skipgram;
  const std::size_t capacity = get_u64(in);
  const std::size_t words = get_u64(in);
  if (words > capacity) throw DataError("LSTM checkpoint dictionary exceeds its capacity");
  std::vector<std::string> table;
  table.reserve(words);
  for (std::size_t i = 0; i < words; ++i) table.push_back(get_string(in));
  ck.dictionary = corpus::Dictionary::from_words(std::move(table), capacity);
  const auto layers = get_u64(in);
  const auto hidden = get_u64(in);
  const auto vocab = get_u64(in);
  if (layers == 0 || layers > 64 || hidden == 0 || hidden > (1u << 16) || vocab == 0 || vocab > (1u << 24)) {
    throw DataError("LSTM checkpoint has implausible dimensions");
  }
  ck.model = LstmModel(vocab, static_cast<int>(hidden), static_cast<int>(layers));
  ck.model.for_each_tensor([&](Eigen::MatrixXd& t) { get_tensor(in, t); });
  return ck;
}

LstmCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_checkpoint(in);
}

}  // namespace tac::langmodel

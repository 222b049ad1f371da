#pragma once

#include <filesystem>
#include <iosfwd>

#include "tac/corpus/dictionary.hpp"
#include "tac/langmodel/lstm.hpp"

namespace tac::langmodel {

struct LstmCheckpoint {
  LstmConfig config;
  InputMode mode = InputMode::skipgram;
  corpus::Dictionary dictionary;
  LstmModel model;
};

/// Binary layout: magic "TACLSTM1", u32 version, the config fields, mode,
/// dictionary capacity and words, then every tensor as u64 rows, u64 cols
/// and row-major little-endian f64 values.
void write_checkpoint(std::ostream& out, const LstmCheckpoint& checkpoint);
void save_checkpoint(const std::filesystem::path& path, const LstmCheckpoint& checkpoint);

// Throws DataError on a bad magic, unknown version, or truncated file.
LstmCheckpoint read_checkpoint(std::istream& in);
LstmCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace tac::langmodel

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ffn/core/tensor.hpp"
#include "ffn/text/preprocess.hpp"

namespace ffn {

inline constexpr std::size_t kEmbDim = 300;

enum class EmbeddingInit { Random, Glove };
enum class EmbeddingMode { Static, Dynamic };

struct EmbeddingConfig {
  EmbeddingInit init = EmbeddingInit::Random;
  EmbeddingMode mode = EmbeddingMode::Static;
  std::size_t dimension = kEmbDim;
  std::string glove_path;     // required iff init == Glove
  double random_scale = 0.05; // uniform [-scale, scale]
  std::uint64_t seed = 0;
};

struct EmbeddingMatrix {
  Tensor<float> weights;  // |V| x dimension; row 0 (pad) is all zero
  // Fraction of real vocabulary words (ids >= 2) found in the vectors file;
  // 1.0 in random mode.
  double coverage = 1.0;
};

// Rows 1..|V|-1 are drawn i.i.d. uniform in [-random_scale, random_scale]
// from the seeded generator; in Glove mode rows for covered words are copied
// from the file and uncovered words keep their random draw. Row 0 stays zero.
// Throws DataError if the vectors file is missing or has a wrong dimension.
EmbeddingMatrix init_embedding_matrix(const Vocabulary& vocab, const EmbeddingConfig& config);

// 15 x D gather of the sequence's rows. Pad positions contribute zero rows.
Tensor<float> lookup(const TokenSequence& seq, const EmbeddingMatrix& matrix);

inline const char* embedding_init_name(EmbeddingInit v) {
  return v == EmbeddingInit::Random ? "random" : "glove";
}
inline const char* embedding_mode_name(EmbeddingMode v) {
  return v == EmbeddingMode::Static ? "static" : "dynamic";
}

}  // namespace ffn

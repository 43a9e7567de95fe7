#include "ffn/text/embedding.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "ffn/core/errors.hpp"
#include "ffn/core/rng.hpp"
#include "ffn/kernels/kernels.hpp"

namespace ffn {

EmbeddingMatrix init_embedding_matrix(const Vocabulary& vocab, const EmbeddingConfig& config) {
  const std::size_t V = vocab.size();
  const std::size_t D = config.dimension;
  EmbeddingMatrix m;
  m.weights = Tensor<float>({V, D});

  Rng rng(config.seed);
  for (std::size_t r = 1; r < V; ++r) {  // row 0 (pad) stays zero
    for (std::size_t d = 0; d < D; ++d) {
      m.weights.at2(r, d) =
          static_cast<float>(rng.uniform(-config.random_scale, config.random_scale));
    }
  }

  if (config.init == EmbeddingInit::Random) {
    m.coverage = 1.0;
    return m;
  }

  std::ifstream f(config.glove_path);
  if (!f) throw DataError("cannot read GloVe vectors from " + config.glove_path);
  std::size_t covered = 0;
  std::string line;
  std::vector<float> vec(D);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream in(line);
    std::string word;
    in >> word;
    std::size_t d = 0;
    float v;
    while (d < D && (in >> v)) vec[d++] = v;
    float extra;
    if (d != D || (in >> extra)) {
      throw DataError("GloVe line for '" + word + "' does not have dimension " +
                      std::to_string(D));
    }
    if (!vocab.contains(word)) continue;
    const int id = vocab.id(word);
    std::copy(vec.begin(), vec.end(), m.weights.ptr() + static_cast<std::size_t>(id) * D);
    ++covered;
  }
  const std::size_t real_words = V - 2;
  m.coverage = real_words == 0 ? 1.0
                               : static_cast<double>(covered) / static_cast<double>(real_words);
  if (m.coverage < 1.0) {
    std::cerr << "warning: GloVe coverage " << covered << "/" << real_words
              << " words; uncovered words keep random init\n";
  }
  return m;
}

Tensor<float> lookup(const TokenSequence& seq, const EmbeddingMatrix& matrix) {
  const std::size_t D = matrix.weights.dim(1);
  Tensor<float> out({kSeqLen, D});
  for (std::size_t t = 0; t < kSeqLen; ++t) {
    const int id = seq.ids[t];
    if (id < 0 || static_cast<std::size_t>(id) >= matrix.weights.dim(0)) {
      throw DataError("token id " + std::to_string(id) + " out of range for |V|=" +
                      std::to_string(matrix.weights.dim(0)));
    }
  }
  kernels::embedding_lookup(seq.ids.data(), kSeqLen, matrix.weights.ptr(), D, out.ptr());
  return out;
}

}  // namespace ffn

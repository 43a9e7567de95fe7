#pragma once

#include <string>
#include <vector>

#include "ffn/core/kvfile.hpp"
#include "ffn/core/tensor.hpp"

namespace ffn {

// On-disk checkpoint layout under a directory:
//   manifest.txt          key/value manifest: architecture, hyperparameters,
//                         preprocessing fingerprint, parameter index
//   params/<name>.f32     raw little-endian float32, row-major
//   vocab.tsv             the vocabulary the model was trained with (when
//                         the model uses one)
//
// Parameter names are listed in the manifest as param.<i>.name/.shape so a
// load can verify completeness and shapes.

void save_checkpoint(const std::string& dir, const KvFile& manifest,
                     const std::vector<ParamRef<float>>& params);

struct LoadedCheckpoint {
  KvFile manifest;
  std::vector<std::pair<std::string, Tensor<float>>> params;

  const Tensor<float>& param(const std::string& name) const;  // throws DataError
};

LoadedCheckpoint load_checkpoint(const std::string& dir);

// Copies loaded arrays into a live model's parameters; shape mismatches or
// missing names raise DataError.
void restore_params(const LoadedCheckpoint& ckpt, const std::vector<ParamRef<float>>& params);

}  // namespace ffn

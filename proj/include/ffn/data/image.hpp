#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffn/core/tensor.hpp"
#include "ffn/data/labels.hpp"

namespace ffn {

// Interleaved 8-bit RGB pixels.
struct Image8 {
  std::size_t width = 0, height = 0;
  std::vector<std::uint8_t> rgb;  // height * width * 3

  std::uint8_t& at(std::size_t y, std::size_t x, std::size_t c) {
    return rgb[(y * width + x) * 3 + c];
  }
  std::uint8_t at(std::size_t y, std::size_t x, std::size_t c) const {
    return rgb[(y * width + x) * 3 + c];
  }
};

// PNG/JPEG decode (grayscale replicated to RGB, alpha dropped). Throws
// DataError for a missing or undecodable file.
Image8 decode_image_file(const std::string& path);
bool try_decode_image_bytes(const std::vector<std::uint8_t>& bytes);

void write_png(const std::string& path, const Image8& img);

// Bilinear resize with half-pixel centers and edge clamping, then scale to
// [0, 1]. The algorithm is implemented here (not delegated) so that results
// are reproducible across platforms. Output is channels-first 3 x size x
// size; an identity-size input is passed through unchanged up to the /255
// scaling.
Tensor<float> to_image_tensor(const Image8& img, std::size_t size);

Tensor<float> load_and_resize(const std::string& path, std::size_t size = 560);

// Class-correlated synthetic image: per-class background hue plus a per-class
// shape, with deterministic per-sample noise. Pure in (label, sample_key).
Image8 synthetic_image(Label label, std::uint64_t sample_key, std::size_t size = 128);

}  // namespace ffn

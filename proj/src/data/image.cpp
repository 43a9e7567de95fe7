#include "ffn/data/image.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "ffn/core/errors.hpp"
#include "ffn/core/hash.hpp"
#include "ffn/core/rng.hpp"

namespace ffn {

namespace {

Image8 from_mat(const cv::Mat& mat, const std::string& what) {
  if (mat.empty()) throw DataError("undecodable image: " + what);
  cv::Mat m8;
  if (mat.depth() != CV_8U) {
    mat.convertTo(m8, CV_8U);
  } else {
    m8 = mat;
  }
  Image8 img;
  img.width = static_cast<std::size_t>(m8.cols);
  img.height = static_cast<std::size_t>(m8.rows);
  img.rgb.resize(img.width * img.height * 3);
  const int ch = m8.channels();
  for (std::size_t y = 0; y < img.height; ++y) {
    const std::uint8_t* row = m8.ptr<std::uint8_t>(static_cast<int>(y));
    for (std::size_t x = 0; x < img.width; ++x) {
      const std::uint8_t* px = row + x * static_cast<std::size_t>(ch);
      std::uint8_t r, g, b;
      if (ch == 1) {
        r = g = b = px[0];  // grayscale replicated to three channels
      } else {
        // OpenCV decodes BGR(A); alpha is dropped.
        b = px[0];
        g = px[1];
        r = px[2];
      }
      img.at(y, x, 0) = r;
      img.at(y, x, 1) = g;
      img.at(y, x, 2) = b;
    }
  }
  return img;
}

}  // namespace

Image8 decode_image_file(const std::string& path) {
  cv::Mat mat = cv::imread(path, cv::IMREAD_UNCHANGED);
  return from_mat(mat, path);
}

bool try_decode_image_bytes(const std::vector<std::uint8_t>& bytes) {
  if (bytes.empty()) return false;
  cv::Mat raw(1, static_cast<int>(bytes.size()), CV_8UC1,
              const_cast<std::uint8_t*>(bytes.data()));
  cv::Mat mat = cv::imdecode(raw, cv::IMREAD_UNCHANGED);
  return !mat.empty();
}

void write_png(const std::string& path, const Image8& img) {
  cv::Mat mat(static_cast<int>(img.height), static_cast<int>(img.width), CV_8UC3);
  for (std::size_t y = 0; y < img.height; ++y) {
    std::uint8_t* row = mat.ptr<std::uint8_t>(static_cast<int>(y));
    for (std::size_t x = 0; x < img.width; ++x) {
      row[x * 3 + 0] = img.at(y, x, 2);  // BGR order for the encoder
      row[x * 3 + 1] = img.at(y, x, 1);
      row[x * 3 + 2] = img.at(y, x, 0);
    }
  }
  if (!cv::imwrite(path, mat)) throw DataError("cannot write PNG to " + path);
}

Tensor<float> to_image_tensor(const Image8& img, std::size_t size) {
  if (img.width == 0 || img.height == 0) throw DataError("empty image");
  Tensor<float> out({3, size, size});
  const double sy = static_cast<double>(img.height) / static_cast<double>(size);
  const double sx = static_cast<double>(img.width) / static_cast<double>(size);
  for (std::size_t oy = 0; oy < size; ++oy) {
    const double fy = (static_cast<double>(oy) + 0.5) * sy - 0.5;
    const double cy = std::clamp(fy, 0.0, static_cast<double>(img.height - 1));
    const std::size_t y0 = static_cast<std::size_t>(cy);
    const std::size_t y1 = std::min(y0 + 1, img.height - 1);
    const double wy = cy - static_cast<double>(y0);
    for (std::size_t ox = 0; ox < size; ++ox) {
      const double fx = (static_cast<double>(ox) + 0.5) * sx - 0.5;
      const double cx = std::clamp(fx, 0.0, static_cast<double>(img.width - 1));
      const std::size_t x0 = static_cast<std::size_t>(cx);
      const std::size_t x1 = std::min(x0 + 1, img.width - 1);
      const double wx = cx - static_cast<double>(x0);
      for (std::size_t c = 0; c < 3; ++c) {
        const double top = (1.0 - wx) * img.at(y0, x0, c) + wx * img.at(y0, x1, c);
        const double bot = (1.0 - wx) * img.at(y1, x0, c) + wx * img.at(y1, x1, c);
        const double v = (1.0 - wy) * top + wy * bot;
        out.at3(c, oy, ox) = static_cast<float>(v / 255.0);
      }
    }
  }
  return out;
}

Tensor<float> load_and_resize(const std::string& path, std::size_t size) {
  return to_image_tensor(decode_image_file(path), size);
}

Image8 synthetic_image(Label label, std::uint64_t sample_key, std::size_t size) {
  static constexpr std::uint8_t palette[kNumClasses][3] = {
      {40, 170, 60},  {200, 40, 40},  {40, 60, 200},
      {220, 200, 40}, {160, 40, 180}, {40, 190, 190},
  };
  const auto cls = static_cast<std::size_t>(label);
  Rng rng(mix64(sample_key ^ (0xabcdull + cls)));
  Image8 img;
  img.width = img.height = size;
  img.rgb.assign(size * size * 3, 0);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t c = 0; c < 3; ++c) {
        const int noise = static_cast<int>(rng.uniform_index(21)) - 10;
        img.at(y, x, c) = static_cast<std::uint8_t>(
            std::clamp(static_cast<int>(palette[cls][c]) + noise, 0, 255));
      }
    }
  }
  // Per-class shape in a contrasting tone.
  const std::uint8_t tone = palette[cls][0] > 127 ? 20 : 235;
  const double cx = static_cast<double>(size) / 2.0;
  const auto s = static_cast<double>(size);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const double dx = (static_cast<double>(x) - cx) / s;
      const double dy = (static_cast<double>(y) - cx) / s;
      bool inside = false;
      switch (cls) {
        case 0: inside = dx * dx + dy * dy < 0.09; break;                 // disc
        case 1: inside = std::abs(dx) < 0.22 && std::abs(dy) < 0.22; break;  // square
        case 2: inside = (y / (size / 8)) % 2 == 0; break;                // h-stripes
        case 3: inside = (x / (size / 8)) % 2 == 0; break;                // v-stripes
        case 4: inside = std::abs(dx) + std::abs(dy) < 0.28; break;       // diamond
        default:
          inside = ((x / (size / 8)) + (y / (size / 8))) % 2 == 0;        // checker
          break;
      }
      if (inside) {
        img.at(y, x, 0) = tone;
        img.at(y, x, 1) = tone;
        img.at(y, x, 2) = tone;
      }
    }
  }
  return img;
}

}  // namespace ffn

#include "ffn/train/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "ffn/core/errors.hpp"

namespace ffn {

namespace fs = std::filesystem;

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint arrays are little-endian; big-endian hosts need a swap here");

std::string shape_field(const std::vector<std::size_t>& shape) {
  std::string out;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += "x";
    out += std::to_string(shape[i]);
  }
  return out;
}

std::vector<std::size_t> parse_shape(const std::string& s) {
  std::vector<std::size_t> shape;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto x = s.find('x', start);
    const std::string part = s.substr(start, x == std::string::npos ? x : x - start);
    if (!part.empty()) shape.push_back(std::stoull(part));
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return shape;
}

}  // namespace

void save_checkpoint(const std::string& dir, const KvFile& manifest,
                     const std::vector<ParamRef<float>>& params) {
  fs::create_directories(fs::path(dir) / "params");
  KvFile m = manifest;
  m.set_u64("param.count", params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::string key = "param." + std::to_string(i);
    m.set(key + ".name", params[i].name);
    m.set(key + ".shape", shape_field(params[i].value->shape));
    std::ofstream f(fs::path(dir) / "params" / (params[i].name + ".f32"), std::ios::binary);
    if (!f) throw DataError("cannot write checkpoint parameter " + params[i].name);
    f.write(reinterpret_cast<const char*>(params[i].value->ptr()),
            static_cast<std::streamsize>(params[i].value->size() * sizeof(float)));
  }
  m.save((fs::path(dir) / "manifest.txt").string());
}

LoadedCheckpoint load_checkpoint(const std::string& dir) {
  LoadedCheckpoint out;
  out.manifest = KvFile::load((fs::path(dir) / "manifest.txt").string());
  const std::size_t count = out.manifest.get_u64("param.count");
  for (std::size_t i = 0; i < count; ++i) {
    const std::string key = "param." + std::to_string(i);
    const std::string name = out.manifest.get(key + ".name");
    Tensor<float> t(parse_shape(out.manifest.get(key + ".shape")));
    std::ifstream f(fs::path(dir) / "params" / (name + ".f32"), std::ios::binary);
    if (!f) throw DataError("checkpoint parameter file missing: " + name);
    f.read(reinterpret_cast<char*>(t.ptr()),
           static_cast<std::streamsize>(t.size() * sizeof(float)));
    if (f.gcount() != static_cast<std::streamsize>(t.size() * sizeof(float))) {
      throw DataError("checkpoint parameter " + name + " truncated");
    }
    out.params.emplace_back(name, std::move(t));
  }
  return out;
}

const Tensor<float>& LoadedCheckpoint::param(const std::string& name) const {
  for (const auto& [n, t] : params) {
    if (n == name) return t;
  }
  throw DataError("checkpoint has no parameter '" + name + "'");
}

void restore_params(const LoadedCheckpoint& ckpt, const std::vector<ParamRef<float>>& params) {
  for (const auto& p : params) {
    const Tensor<float>& src = ckpt.param(p.name);
    if (src.shape != p.value->shape) {
      throw DataError("checkpoint parameter '" + p.name + "' has shape " +
                      shape_string(src.shape) + ", model expects " +
                      shape_string(p.value->shape));
    }
    p.value->data = src.data;
  }
}

}  // namespace ffn

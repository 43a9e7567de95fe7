#include "ffn/core/kvfile.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ffn/core/errors.hpp"

namespace ffn {

void KvFile::set(const std::string& key, const std::string& value) {
  auto it = index_.find(key);
  if (it != index_.end()) {
    entries_[it->second].second = value;
    return;
  }
  index_[key] = entries_.size();
  entries_.emplace_back(key, value);
}

void KvFile::set_u64(const std::string& key, std::uint64_t value) {
  set(key, std::to_string(value));
}

void KvFile::set_double(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  set(key, buf);
}

bool KvFile::has(const std::string& key) const { return index_.count(key) != 0; }

const std::string& KvFile::get(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw DataError("missing key '" + key + "' in manifest");
  return entries_[it->second].second;
}

std::string KvFile::get_or(const std::string& key, std::string fallback) const {
  auto it = index_.find(key);
  return it == index_.end() ? std::move(fallback) : entries_[it->second].second;
}

std::uint64_t KvFile::get_u64(const std::string& key) const {
  return std::stoull(get(key));
}

double KvFile::get_double(const std::string& key) const {
  return std::stod(get(key));
}

std::string KvFile::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

void KvFile::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  f << serialize();
}

KvFile KvFile::parse(const std::string& text) {
  KvFile kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) kv.set(key, value);
  }
  return kv;
}

KvFile KvFile::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

}  // namespace ffn

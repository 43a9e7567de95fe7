#pragma once

#include <map>
#include <string>
#include <vector>

namespace ffn {

// Line-oriented "key = value" text files, used for checkpoint manifests,
// run manifests and CLI config files. Keys are unique; '#' starts a comment;
// blank lines are ignored. Writing emits keys in insertion order so that
// identical content produces identical bytes.
class KvFile {
 public:
  void set(const std::string& key, const std::string& value);
  void set_u64(const std::string& key, std::uint64_t value);
  void set_double(const std::string& key, double value);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;           // throws DataError
  std::string get_or(const std::string& key, std::string fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  double get_double(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string serialize() const;
  void save(const std::string& path) const;

  static KvFile parse(const std::string& text);
  static KvFile load(const std::string& path);  // throws DataError if unreadable

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace ffn

#pragma once

// Structured-text run reports: stable key order, 17-digit numerics, so a
// given report object always serializes to identical bytes.

#include <string>
#include <utility>
#include <vector>

namespace lck {

class Report {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, int value);
  void set(const std::string& key, long long value);
  void set_flag(const std::string& key, bool value);

  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;

  std::string to_text() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

std::string format_double(double v);

}  // namespace lck

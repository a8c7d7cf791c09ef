#include "lck/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lck {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void Report::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : kv_)
    if (k == key) {
      v = value;
      return;
    }
  kv_.emplace_back(key, value);
}

void Report::set(const std::string& key, double value) { set(key, format_double(value)); }
void Report::set(const std::string& key, int value) { set(key, std::to_string(value)); }
void Report::set(const std::string& key, long long value) { set(key, std::to_string(value)); }
void Report::set_flag(const std::string& key, bool value) {
  set(key, std::string(value ? "true" : "false"));
}

bool Report::has(const std::string& key) const {
  for (const auto& [k, v] : kv_)
    if (k == key) return true;
  return false;
}

std::string Report::get(const std::string& key) const {
  for (const auto& [k, v] : kv_)
    if (k == key) return v;
  throw std::out_of_range("missing report key " + key);
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& [k, v] : kv_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

void Report::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << to_text();
  if (!f) throw std::runtime_error("write failure on " + path);
}

}  // namespace lck

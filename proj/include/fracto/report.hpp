#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fracto {

/// Machine-readable outcome of a verification run; stable field order when
/// serialized (see spacefile.cpp for the JSON side).
struct Report {
  std::string name;
  std::string status = "pass";  // pass | fail | info
  std::vector<std::pair<std::string, long long>> counts;
  std::vector<std::string> witnesses;
  double timing_ms = 0.0;
  std::uint64_t seed = 0;

  bool passed() const { return status != "fail"; }

  void count(const std::string& key, long long value) {
    counts.emplace_back(key, value);
  }

  long long count(const std::string& key) const {
    for (const auto& [k, v] : counts)
      if (k == key) return v;
    return -1;
  }

  void fail(std::string witness) {
    status = "fail";
    witnesses.push_back(std::move(witness));
  }
};

}  // namespace fracto

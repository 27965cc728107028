#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "fracto/errors.hpp"

namespace fracto {

/// Fixed-universe bit set: elements are ids 0..size-1.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  static Bits full(int universe) {
    Bits b(universe);
    for (int i = 0; i < universe; ++i) b.set(i);
    return b;
  }

  static Bits of(int universe, std::initializer_list<int> elems) {
    Bits b(universe);
    for (int e : elems) b.set(e);
    return b;
  }

  static Bits of(int universe, const std::vector<int>& elems) {
    Bits b(universe);
    for (int e : elems) b.set(e);
    return b;
  }

  // Interprets the low bits of a word as a subset; universe must be <= 64.
  static Bits from_mask(int universe, std::uint64_t mask) {
    Bits b(universe);
    if (universe > 0) b.w_[0] = mask;
    return b;
  }

  int universe() const { return n_; }

  // Low-word mask; only valid for universes up to 64.
  std::uint64_t mask() const { return w_.empty() ? 0 : w_[0]; }

  bool test(int i) const {
    check(i);
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(int i) {
    check(i);
    w_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(int i) {
    check(i);
    w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  int count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }

  bool empty() const {
    for (auto x : w_) if (x) return false;
    return true;
  }

  bool includes(const Bits& sub) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (sub.w_[k] & ~w_[k]) return false;
    return true;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }

  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }

  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  friend bool operator==(const Bits& a, const Bits& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  // Canonical order: smaller sets first, ties broken by ascending element ids.
  friend bool operator<(const Bits& a, const Bits& b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    for (std::size_t k = 0; k < a.w_.size() && k < b.w_.size(); ++k) {
      if (a.w_[k] != b.w_[k]) {
        std::uint64_t diff = a.w_[k] ^ b.w_[k];
        std::uint64_t low = diff & (~diff + 1);
        return (a.w_[k] & low) != 0;  // the set holding the smaller element wins
      }
    }
    return a.w_.size() < b.w_.size();
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t x = w_[k];
      while (x) {
        int b = std::countr_zero(x);
        out.push_back(static_cast<int>(k * 64) + b);
        x &= x - 1;
      }
    }
    return out;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(n_);
    for (auto x : w_) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

 private:
  void check(int i) const {
    if (i < 0 || i >= n_)
      throw OutOfRange("element " + std::to_string(i) +
                       " outside ground space of size " + std::to_string(n_));
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace fracto

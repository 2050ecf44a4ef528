#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gsd {

using FluentId = int;

/// A planning state: the set of fluents that are true, stored as a canonical
/// bitset over the grounded fluent index. Bits beyond size() are always zero,
/// so equality and hashing are plain word comparisons.
class State {
 public:
  State() = default;
  explicit State(std::size_t num_fluents)
      : size_(num_fluents), words_((num_fluents + 63) / 64, 0) {}

  static State from_fluents(std::size_t num_fluents,
                            std::span<const FluentId> fluents) {
    State s(num_fluents);
    for (FluentId f : fluents) s.set(f);
    return s;
  }

  std::size_t size() const { return size_; }

  bool test(FluentId f) const {
    return (words_[static_cast<std::size_t>(f) >> 6] >> (f & 63)) & 1U;
  }
  void set(FluentId f) {
    words_[static_cast<std::size_t>(f) >> 6] |= std::uint64_t{1} << (f & 63);
  }
  void reset(FluentId f) {
    words_[static_cast<std::size_t>(f) >> 6] &= ~(std::uint64_t{1} << (f & 63));
  }

  bool contains_all(std::span<const FluentId> fluents) const {
    for (FluentId f : fluents)
      if (!test(f)) return false;
    return true;
  }
  bool contains_none(std::span<const FluentId> fluents) const {
    for (FluentId f : fluents)
      if (test(f)) return false;
    return true;
  }
  bool is_superset_of(const State& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((other.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const { return count() == 0; }

  std::vector<FluentId> fluents() const {
    std::vector<FluentId> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        out.push_back(static_cast<FluentId>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  State symmetric_difference(const State& other) const {
    State out(size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      out.words_[i] = words_[i] ^ other.words_[i];
    return out;
  }

  std::size_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ size_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const State&, const State&) = default;
  friend bool operator<(const State& a, const State& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    return a.words_ < b.words_;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateHash {
  std::size_t operator()(const State& s) const { return s.hash(); }
};

}  // namespace gsd

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qhcodes/kernels.hpp"

namespace qh {

// Fixed-size bitset over point indices. Storage is padded to whole 256-bit
// blocks so the SIMD kernels can read it directly.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t bits) : bits_(bits), words_(words_for(bits), 0) {}

  static std::size_t words_for(std::size_t bits) { return ((bits + 255) / 256) * 4; }

  std::size_t universe() const { return bits_; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

  std::uint64_t count() const { return kernels::popcount(words_, kernels::active_isa()); }
  bool is_subset_of(const PointSet& other) const {
    return kernels::is_subset(words_, other.words_, kernels::active_isa());
  }
  std::uint64_t intersection_count(const PointSet& other) const {
    return kernels::and_count(words_, other.words_, kernels::active_isa());
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t x = words_[w]; x; x &= x - 1) {
        out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(x))));
      }
    }
    return out;
  }

  bool operator==(const PointSet&) const = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace qh

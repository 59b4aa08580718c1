#pragma once

#include "hpv/rational.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hpv {

// Seed mixer; used only to derive stream seeds, never as the generator itself.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a over the purpose label, so distinct purposes get distinct streams.
constexpr std::uint64_t purpose_tag(std::string_view purpose) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : purpose) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// One reproducible random stream. Every draw in the project flows from
/// (master seed, purpose label, index); trials get index = trial number, so
/// results do not depend on execution order or thread count.
class Stream {
 public:
  Stream(std::uint64_t master, std::string_view purpose, std::uint64_t index)
      : engine_(splitmix64(splitmix64(master ^ purpose_tag(purpose)) ^ index)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  // Unbiased BigInt in [0, bound) via bit-rejection.
  BigInt below_big(const BigInt& bound) {
    if (bound <= 0) throw InternalError("below_big: bound must be positive");
    const unsigned bits = static_cast<unsigned>(msb(bound)) + 1;
    const unsigned words = (bits + 63) / 64;
    while (true) {
      BigInt v = 0;
      for (unsigned w = 0; w < words; ++w) v = (v << 64) | BigInt(next_u64());
      v >>= words * 64 - bits;
      if (v < bound) return v;
    }
  }

  double unit_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// Draws indices with exact rational probabilities weights[i] / sum(weights).
/// Scaling to a common denominator happens once, so a draw is one integer
/// sample plus a cumulative walk.
class WeightedPicker {
 public:
  explicit WeightedPicker(const std::vector<Rat>& weights) {
    if (weights.empty()) throw InternalError("WeightedPicker: no weights");
    BigInt common = 1;
    for (const auto& w : weights) {
      if (w <= 0) throw InternalError("WeightedPicker: weights must be positive");
      common = lcm(common, denominator(w));
    }
    total_ = 0;
    for (const auto& w : weights) {
      scaled_.push_back(numerator(w) * (common / denominator(w)));
      total_ += scaled_.back();
    }
    if (total_ <= BigInt(UINT64_MAX)) {
      total64_ = static_cast<std::uint64_t>(total_);
      for (const auto& s : scaled_) scaled64_.push_back(static_cast<std::uint64_t>(s));
    }
  }

  int operator()(Stream& stream) const {
    if (total64_ != 0) {
      std::uint64_t u = stream.below(total64_);
      for (std::size_t i = 0; i < scaled64_.size(); ++i) {
        if (u < scaled64_[i]) return static_cast<int>(i);
        u -= scaled64_[i];
      }
    } else {
      BigInt u = stream.below_big(total_);
      for (std::size_t i = 0; i < scaled_.size(); ++i) {
        if (u < scaled_[i]) return static_cast<int>(i);
        u -= scaled_[i];
      }
    }
    throw InternalError("WeightedPicker: walk fell off the end");
  }

 private:
  std::vector<BigInt> scaled_;
  BigInt total_ = 0;
  std::vector<std::uint64_t> scaled64_;
  std::uint64_t total64_ = 0;
};

}  // namespace hpv

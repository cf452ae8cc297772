#pragma once

// Seeded randomness with a fixed, library-independent mapping from seed to
// output (std:: distributions are implementation-defined).

#include <homsense/matrix.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>

namespace homsense {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % span);
  }

  int sign() { return (next() >> 63) ? -1 : 1; }

  Matrix integer_matrix(std::size_t rows, std::size_t cols, std::int64_t bound) {
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = Rational(Integer(static_cast<long>(uniform(-bound, bound))));
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

/// Decorrelates derived seeds (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace homsense

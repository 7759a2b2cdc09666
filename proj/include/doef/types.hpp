#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace doef {

using Oid = std::uint32_t;
using ClassId = std::uint32_t;
using RefType = std::uint32_t;
using PageId = std::uint32_t;

/// Every stochastic component draws from its own engine seeded through derive_seed.
using Rng = std::mt19937_64;

/// Invalid configuration or parameter values.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RootNotFoundError : public std::out_of_range {
 public:
  explicit RootNotFoundError(Oid oid)
      : std::out_of_range("root object " + std::to_string(oid) + " not found") {}
};

class DegenerateWeightsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PlacementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// splitmix64 finalizer. Used to derive independent seeds and stable hashes.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(seed ^ mix64(stream + 0x5851f42d4c957f2dULL));
}

/// Uniform integer in [lo, hi] (inclusive).
template <typename Int>
Int uniform_int(Rng& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace doef

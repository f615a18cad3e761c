#pragma once

#include <cstdint>
#include <random>

namespace missingnet {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; derives independent child seeds from a parent seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Execution policy for the data-parallel kernels. `serial` is the reference path.
enum class Exec { serial, parallel };

}  // namespace missingnet

#pragma once

#include <cstdint>
#include <string_view>

namespace towbandit::mc {

/// Generator identifier echoed in run metadata so outputs are auditable.
inline constexpr std::string_view kGeneratorId = "splitmix64";

/// splitmix64: the state walks a golden-ratio lattice and each output is a
/// finalizing hash of the state, so the sequence is effectively
/// counter-based and cheap to split into substreams.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

/// One full finalization round of splitmix64, used as a 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Substream for one replication: the initial state is
/// mix64(mix64(seed) xor (golden * (replication + 1))), which decorrelates
/// streams regardless of execution order or thread count.
inline SplitMix64 replication_stream(std::uint64_t seed,
                                     std::uint64_t replication) noexcept {
  const std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
  return SplitMix64{mix64(mix64(seed) ^ (golden * (replication + 1)))};
}

}  // namespace towbandit::mc

#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace ssq {

/// Philox 4x32-10 counter-based generator (Salmon et al., SC 2011,
/// "Parallel random numbers: as easy as 1, 2, 3").
///
/// Draws are keyed by (seed) and addressed by the counter tuple
/// (replication, path, step, stream), so any worker produces identical
/// values for the same logical coordinate regardless of scheduling.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint32_t replication,
                                        std::uint32_t path, std::uint32_t step,
                                        std::uint32_t stream);

/// Draw view bound to one (seed, replication, path) coordinate.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint32_t replication, std::uint32_t path)
      : seed_(seed), rep_(replication), path_(path) {}

  /// Two independent uniforms in the open interval (0,1) from one block.
  std::pair<double, double> uniform2(std::uint32_t step, std::uint32_t stream = 0) const;

  /// Standard normal via Box-Muller; one block yields a pair.
  std::pair<double, double> normal2(std::uint32_t step, std::uint32_t stream = 0) const;
  double normal(std::uint32_t step, std::uint32_t stream = 0) const {
    return normal2(step, stream).first;
  }

 private:
  std::uint64_t seed_;
  std::uint32_t rep_;
  std::uint32_t path_;
};

}  // namespace ssq

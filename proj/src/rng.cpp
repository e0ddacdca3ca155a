#include "ssq/rng.hpp"

#include <cmath>

namespace ssq {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  // 53 significant bits, shifted off the ends of [0,1] so logs are safe.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint32_t replication,
                                        std::uint32_t path, std::uint32_t step,
                                        std::uint32_t stream) {
  std::uint32_t c0 = replication, c1 = path, c2 = step, c3 = stream;
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kPhiloxM0, c0, lo0, hi0);
    mulhilo(kPhiloxM1, c2, lo1, hi1);
    const std::uint32_t n0 = hi1 ^ c1 ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c3 ^ k1;
    const std::uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return {c0, c1, c2, c3};
}

std::pair<double, double> PathRng::uniform2(std::uint32_t step, std::uint32_t stream) const {
  const auto w = philox4x32(seed_, rep_, path_, step, stream);
  return {to_open_unit(w[0], w[1]), to_open_unit(w[2], w[3])};
}

std::pair<double, double> PathRng::normal2(std::uint32_t step, std::uint32_t stream) const {
  const auto [u1, u2] = uniform2(step, stream);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 6.2831853071795864769 * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace ssq

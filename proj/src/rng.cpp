#include "meso/rng.hpp"

#include <cmath>

namespace meso {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMult0, ctr[0], hi0, lo0);
    mulhilo(kMult1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double bits_to_unit(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

void box_muller(double u1, double u2, double& z0, double& z1) {
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  z0 = r * std::cos(theta);
  z1 = r * std::sin(theta);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t space)
    : seed_(seed), space_(space) {
  // Mixing the space into the key firewalls distinct streams of the same
  // seed from each other and from the positional matrix-entry draws.
  const std::uint64_t k = splitmix64(seed ^ splitmix64(space ^ 0x5EED1E55ull));
  key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

void RandomStream::refill() {
  const std::uint64_t sp = splitmix64(space_);
  buf_ = philox4x32({static_cast<std::uint32_t>(block_),
                     static_cast<std::uint32_t>(block_ >> 32),
                     static_cast<std::uint32_t>(sp),
                     static_cast<std::uint32_t>(sp >> 32)},
                    key_);
  ++block_;
  avail_ = 4;
}

std::uint32_t RandomStream::next_u32() {
  if (avail_ == 0) refill();
  return buf_[4 - avail_--];
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return lo | (hi << 32);
}

double RandomStream::next_unit() { return bits_to_unit(next_u64()); }

double RandomStream::next_gaussian() {
  if (has_gauss_spare_) {
    has_gauss_spare_ = false;
    return gauss_spare_;
  }
  double z0, z1;
  box_muller(next_unit(), next_unit(), z0, z1);
  gauss_spare_ = z1;
  has_gauss_spare_ = true;
  return z0;
}

RandomStream RandomStream::substream(std::uint64_t id) const {
  return RandomStream(seed_, splitmix64(space_ ^ splitmix64(id + 1)));
}

}  // namespace meso

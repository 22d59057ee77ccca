#pragma once

#include <array>
#include <cstdint>

namespace meso {

// Philox 4x32-10 keyed counter permutation (Salmon et al.). Every random
// draw in this project is a pure function of (key, counter), so sampling
// is reproducible and independent of evaluation order and worker count.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

// 64 random bits -> (0, 1] with 53-bit resolution. Never returns 0, so it
// is safe under log().
double bits_to_unit(std::uint64_t bits);

// z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = the sine branch. u1 in (0,1].
void box_muller(double u1, double u2, double& z0, double& z1);

// Sequential view of a counter-based stream. Word b of stream (seed, space)
// is read from philox({lo(b), hi(b), lo(space'), hi(space')}, key(seed)),
// so streams are cheap to copy and to fork.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t space);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double next_unit();      // (0, 1]
  double next_gaussian();  // N(0, 1)

  // Statistically independent stream for a distinct id.
  RandomStream substream(std::uint64_t id) const;

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t space_;
  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int avail_ = 0;
  double gauss_spare_ = 0.0;
  bool has_gauss_spare_ = false;
};

}  // namespace meso

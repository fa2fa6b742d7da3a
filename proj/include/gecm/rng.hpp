#pragma once

#include <array>
#include <cstdint>

namespace gecm {

// Counter-seeded xoshiro256++ stream. A stream is fully determined by the
// (seed, stream_id) pair, so any draw site can derive its own non-overlapping
// stream and reproduce bit-identical sequences regardless of thread schedule.
// A single stream must not be shared across concurrent tasks; fork one per
// task instead.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL) ^ mix64(stream_id ^ 0xd1b54a32d192ed03ULL);
    for (auto& w : state_) {
      h += 0x9e3779b97f4a7c15ULL;
      w = mix64(h);
    }
    state_[0] |= 1;  // never all-zero
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child stream addressed by a site counter; same seed, derived stream id.
  RngStream fork(std::uint64_t site) const {
    return RngStream(seed_, mix64(stream_id_ + 0x9e3779b97f4a7c15ULL) ^ mix64(site));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe to pass through log().
  double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n) {
    // Lemire-style rejection keeps the draw exact.
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

// Named stream ids used by the pipeline so stages stay reproducible even when
// some of them are skipped.
namespace streams {
inline constexpr std::uint64_t kSimulate = 0;
inline constexpr std::uint64_t kCv = 1;
inline constexpr std::uint64_t kEcm = 2;
inline constexpr std::uint64_t kGibbs = 3;
inline constexpr std::uint64_t kPredict = 4;
inline constexpr std::uint64_t kSplit = 5;
}  // namespace streams

}  // namespace gecm

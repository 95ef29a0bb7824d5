#pragma once

#include <cstdint>

namespace entdiag {

// Counter-based splittable RNG. Every draw is a pure function of the words
// fed to the mixer, so adding layers/seeds never perturbs earlier draws and
// draws are reproducible across thread counts.
namespace rng {

inline constexpr uint64_t kAngleStream = 0x616e676c65ull;   // "angle"
inline constexpr uint64_t kCzStream = 0x637a6d61736bull;    // "czmask"
inline constexpr uint64_t kMemberStream = 0x6d656d62ull;    // ensemble member
inline constexpr uint64_t kCouplingStream = 0x6a636f75ull;  // syk couplings
inline constexpr uint64_t kInitStream = 0x696e6974ull;      // misc init vectors

inline uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t hash(uint64_t a, uint64_t b) { return mix(mix(a) ^ b); }
inline uint64_t hash(uint64_t a, uint64_t b, uint64_t c) { return mix(hash(a, b) ^ c); }
inline uint64_t hash(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
    return mix(hash(a, b, c) ^ d);
}

// uniform double in [0, 1)
inline double uniform(uint64_t word) { return static_cast<double>(word >> 11) * 0x1.0p-53; }

// standard normal via Box-Muller on two decorrelated words
double normal(uint64_t word);

// derived seed for ensemble member j of a master seed
inline uint64_t member_seed(uint64_t master, uint64_t j) { return hash(master, kMemberStream, j); }

}  // namespace rng

// Small sequential generator for places that want a stream (test scaffolding,
// restarts). Counter-based underneath, so copies are cheap and deterministic.
class SplitStream {
  public:
    explicit SplitStream(uint64_t seed) : seed_(seed) {}
    uint64_t next_word() { return rng::hash(seed_, 0x73747265616dull, counter_++); }
    double uniform() { return rng::uniform(next_word()); }
    double normal() { return rng::normal(next_word()); }
    double angle() { return uniform() * 6.283185307179586476925286766559; }

  private:
    uint64_t seed_;
    uint64_t counter_ = 0;
};

}  // namespace entdiag

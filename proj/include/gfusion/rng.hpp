#pragma once

// Deterministic random streams.
//
// Everything random in this project flows through the fully specified
// generator below so that corpora are reproducible bit-for-bit across runs,
// platforms and reimplementations.  No std::random distribution is used
// anywhere (their output is implementation-defined).
//
//   state update   splitmix64: s += 0x9E3779B97F4A7C15; output = scramble(s)
//   scramble(z)    z ^= z>>30; z *= 0xBF58476D1CE4E5B9;
//                  z ^= z>>27; z *= 0x94D049BB133111EB; z ^= z>>31
//   stream split   derive(h, t) = scramble(h ^ (t*0xD1B54A32D192ED03 + 0x8CB92BA72F3D8DD7))
//   string tags    FNV-1a 64-bit over the UTF-8 bytes
//   uniform [0,1)  (next() >> 11) * 2^-53
//   uniform (0,1]  ((next() >> 11) + 1) * 2^-53
//   normal         Box-Muller: sqrt(-2 ln u) * cos(2 pi v), u in (0,1], v in [0,1)
//
// Stream discipline: one derived stream per (seed, atom index, field) during
// generation and per (seed, check name, trial index) in the check suite, so
// results do not depend on evaluation order.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace gfusion {

constexpr std::uint64_t splitmix64_scramble(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

constexpr std::uint64_t derive_stream(std::uint64_t h, std::uint64_t tag) {
  return splitmix64_scramble(h ^ (tag * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_scramble(state_);
  }

  // Derived stream; does not advance this one.
  Rng stream(std::uint64_t tag) const { return Rng(derive_stream(state_, tag)); }
  Rng stream(std::string_view tag) const { return stream(fnv1a64(tag)); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Modulo bias is irrelevant for the tiny ranges used here (spans < 2^13).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  double normal() {
    const double u = uniform_pos();
    const double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.14159265358979323846 * v);
  }

 private:
  std::uint64_t state_;
};

}  // namespace gfusion

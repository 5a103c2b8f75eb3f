#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace bnk {

using Cx = std::complex<double>;

// Run-level random generator. Every random choice in a run (squaring
// matrices, p0, gamma, start system coefficients, diagonal entries) is drawn
// from a named substream derived from the single run seed, so the derivation
// order is fixed and runs are reproducible.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Independent substream for a named purpose; does not disturb this stream.
  Rng derive(std::string_view label) const {
    std::uint64_t h = seed_ ^ 0x9e3779b97f4a7c15ull;
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return Rng(h);
  }

  std::uint64_t u64() { return gen_(); }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }

  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

  Cx complex_gauss() {
    double re = gauss();
    double im = gauss();
    return Cx(re, im);
  }

  // Uniform on the unit circle S^1.
  Cx unit_complex() {
    double theta = uniform(0.0, 6.283185307179586476925286766559);
    return Cx(std::cos(theta), std::sin(theta));
  }

private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace bnk

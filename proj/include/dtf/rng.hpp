#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace dtf {

// splitmix64 step; used to derive independent stream seeds from
// (global seed, stream index) pairs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// mt19937_64 with explicit real transforms.  The standard pins the raw
// engine sequence, so sampled values are bit-identical everywhere; the
// standard library's distribution objects are not used on purpose.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform on [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // standard normal via Box-Muller; always consumes exactly two draws
  double gaussian() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  // complex normal with E|z|^2 = 1
  std::complex<double> cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * 0.7071067811865475244, im * 0.7071067811865475244};
  }

  // uniform integer in [lo, hi], inclusive
  int uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int k = lo + static_cast<int>(uniform01() * span);
    return k > hi ? hi : k;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dtf

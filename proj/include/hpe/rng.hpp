#ifndef HPE_RNG_HPP
#define HPE_RNG_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hpe {

// Single seeded random source. Sampling is done by hand on top of the raw
// mt19937_64 stream so seeded runs are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng from_entropy() {
    std::random_device device;
    std::uint64_t seed = (std::uint64_t{device()} << 32) ^ device();
    return Rng(seed);
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t uniform(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t value;
    do {
      value = engine_();
    } while (value >= limit);
    return value % bound;
  }

  // Uniform in [1, bound).
  std::uint64_t nonzero(std::uint64_t bound) { return 1 + uniform(bound - 1); }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[uniform(i)]);
    }
  }

  // Derives an independent child stream; used to give each key its own seed.
  Rng split() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hpe

#endif  // HPE_RNG_HPP

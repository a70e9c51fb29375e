#ifndef QBND_RANDOM_HPP
#define QBND_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace qbnd {

/// Seeded random stream with a pinned algorithm so identical seeds
/// reproduce identical samples bit-exactly on every platform.
///
/// Gaussians come from Box-Muller over the top 53 bits of mt19937_64
/// (std::normal_distribution is implementation-defined and would break
/// reproducibility across standard libraries). Child streams for task
/// `index` use the seed derivation
///   child_seed = splitmix64(parent_seed ^ splitmix64(index + 1)).
class RandomSource {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/box-muller";

  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform();

  /// Standard normal N(0, 1).
  double gaussian();

  /// Real and imaginary parts independent N(0, 1).
  std::complex<double> gaussian_complex();

  RandomSource child(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qbnd

#endif  // QBND_RANDOM_HPP

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace mf {

/// Deterministic xoshiro256++ stream. The standard library engines are
/// portable but its distributions are not, so every draw here is hand-rolled
/// to guarantee identical sequences on every platform for a given seed.
/// Substreams are derived by hashing a tag into the seed; each pipeline
/// component takes its own substream so parallel consumers never share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for a named component ("dataset", "gan", ...).
  Rng substream(std::string_view tag) const;
  /// Indexed variant for per-job streams (ic index, repeat index, ...).
  Rng substream(std::string_view tag, std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform in [0,1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal via polar Box-Muller (no cached spare; one value per call).
  double normal();
  /// Unbiased integer in [0,n) by rejection.
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t s_[4] = {0, 0, 0, 0};
};

/// FNV-1a 64-bit hash; used for substream tags and artifact checksums.
std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t basis = 0xcbf29ce484222325ull);
std::uint64_t fnv1a64(std::string_view s);

}  // namespace mf

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hardedge {

/// Philox4x64-10 block function (Salmon et al., Random123).
///
/// Maps a 256-bit counter and a 128-bit key to 256 bits of output. Every
/// random scalar in this library is derived from one of these blocks, so a
/// value is fully determined by (key, counter) and never by call order.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

/// Source of uniform words for a single logical draw.
///
/// The draw index and a block counter form the Philox counter; the stream
/// descriptor forms the key. A DrawSource can be consumed for as many words
/// as a sampler needs (rejection loops included) without touching other draws.
class DrawSource {
 public:
  using result_type = std::uint64_t;

  DrawSource(std::array<std::uint64_t, 2> key, std::uint64_t draw_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal via Box-Muller; pairs are cached.
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  void refill();

  std::array<std::uint64_t, 2> key_;
  std::uint64_t draw_index_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buffer_{};
  int position_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Immutable descriptor of an independent random stream.
///
/// Two streams with the same (master_seed, stream_index) yield identical
/// sequences on any thread and in any creation order.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  /// Source for the draw with the given index.
  DrawSource draw(std::uint64_t index) const;
  /// Sequential source for consumers that do not need per-draw addressing.
  /// Uses a reserved draw index far above any matrix entry index.
  DrawSource sequential() const;
  /// Derived stream, independent of this one and of its siblings.
  RngStream child(std::uint64_t index) const;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

}  // namespace hardedge

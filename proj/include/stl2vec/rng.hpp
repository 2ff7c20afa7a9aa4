#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace stl2vec {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic substream seed from (master seed, purpose label, item index).
/// Independent of iteration order and thread count: any worker can recreate
/// the stream for item i without touching other streams.
inline std::uint64_t substream_seed(std::uint64_t master_seed,
                                    std::string_view label, std::uint64_t index) {
  std::uint64_t h = detail::splitmix64(master_seed);
  for (char c : label) {
    h = detail::splitmix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  }
  return detail::splitmix64(h ^ index);
}

inline std::mt19937_64 substream_engine(std::uint64_t master_seed,
                                        std::string_view label,
                                        std::uint64_t index) {
  return std::mt19937_64(substream_seed(master_seed, label, index));
}

}  // namespace stl2vec

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace gdist {

/// Independent sub-stream seed: first draw of mt19937_64 seeded with
/// seed_seq{lo32(seed), hi32(seed), stream...}.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint32_t> stream) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  words.insert(words.end(), stream.begin(), stream.end());
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq)();
}

}  // namespace gdist

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dagwish {

using Rng = std::mt19937_64;

// Seed of the named substream (label, index) under a master seed.
std::uint64_t substream_seed(std::uint64_t seed, std::string_view label,
                             std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t seed, std::string_view label,
                    std::uint64_t index = 0) {
  return Rng(substream_seed(seed, label, index));
}

}  // namespace dagwish

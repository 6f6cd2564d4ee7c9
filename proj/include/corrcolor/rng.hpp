#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace corrcolor {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent seed for a named purpose ("cover", "trial", ...).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose, std::uint64_t index);

/// Counter-based uniform draw in [0, 1): a pure function of its arguments, so
/// per-color samples do not depend on evaluation order.
double counter_uniform(std::uint64_t key, std::uint64_t a, std::uint64_t b);

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine{mix64(seed)}; }

}  // namespace corrcolor

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace qdeut {

// Derives an independent stream seed from a master seed, a purpose label,
// and up to three stream indices (term index, noise scale, grid index, ...).
// The derivation is a fixed avalanche-mix chain, so streams are stable
// across platforms and independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                          std::uint64_t a = 0, std::uint64_t b = 0, std::uint64_t c = 0);

// Engine seeded via derive_seed.
std::mt19937_64 make_engine(std::uint64_t master, std::string_view purpose,
                            std::uint64_t a = 0, std::uint64_t b = 0, std::uint64_t c = 0);

// Uniform double in [0, 1) from the engine's raw output. Used instead of
// std::uniform_real_distribution, whose output sequence is not pinned by the
// standard; this mapping is bit-reproducible everywhere.
double uniform_unit(std::mt19937_64& eng);

// Draws `shots` outcomes from a discrete distribution by per-shot inverse-CDF
// lookup and returns counts per outcome. Negative probabilities (tiny noise
// from upstream arithmetic) are clamped to zero; the CDF is normalized.
std::vector<long> multinomial_counts(const std::vector<double>& probs, long shots,
                                     std::mt19937_64& eng);

}  // namespace qdeut

#include "qdeut/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdeut {
namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                          std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix(master);
  h = mix(h ^ fnv1a(purpose));
  h = mix(h ^ a);
  h = mix(h ^ b);
  h = mix(h ^ c);
  return h;
}

std::mt19937_64 make_engine(std::uint64_t master, std::string_view purpose,
                            std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return std::mt19937_64(derive_seed(master, purpose, a, b, c));
}

double uniform_unit(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::vector<long> multinomial_counts(const std::vector<double>& probs, long shots,
                                     std::mt19937_64& eng) {
  if (probs.empty()) throw std::invalid_argument("empty outcome distribution");
  if (shots < 0) throw std::invalid_argument("shot count must be >= 0");
  std::vector<double> cdf(probs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    total += std::max(probs[i], 0.0);
    cdf[i] = total;
  }
  if (total <= 0.0) throw std::invalid_argument("outcome distribution sums to zero");
  std::vector<long> counts(probs.size(), 0);
  for (long s = 0; s < shots; ++s) {
    const double u = uniform_unit(eng) * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min<std::size_t>(it - cdf.begin(), probs.size() - 1);
    ++counts[idx];
  }
  return counts;
}

}  // namespace qdeut

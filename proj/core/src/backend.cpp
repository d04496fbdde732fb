#include "qdeut/backend.hpp"

#include <stdexcept>

namespace qdeut {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::exact: return "exact";
    case Mode::sampled: return "sampled";
    case Mode::noisy: return "noisy";
    case Mode::noisy_zne: return "noisy+zne";
  }
  throw std::logic_error("unhandled mode");
}

Mode mode_from_string(std::string_view name) {
  if (name == "exact") return Mode::exact;
  if (name == "sampled") return Mode::sampled;
  if (name == "noisy") return Mode::noisy;
  if (name == "noisy+zne") return Mode::noisy_zne;
  throw std::invalid_argument("unknown mode: " + std::string(name) +
                              " (expected exact, sampled, noisy, or noisy+zne)");
}

}  // namespace qdeut

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qdeut {

// Gate set. RotY(theta) means exp(-i theta Y / 2); this sign convention is
// global. SdgH is the Y-measurement basis change, the single composite gate
// with matrix H * S_dagger.
struct PauliX {
  int q;
};
struct RotY {
  int q;
  double theta;
};
struct Hadamard {
  int q;
};
struct SdgH {
  int q;
};
struct Cnot {
  int control;
  int target;
};
struct ControlledRotY {
  int control;
  int target;
  double theta;
};

using Gate = std::variant<PauliX, RotY, Hadamard, SdgH, Cnot, ControlledRotY>;

// Ordered gate sequence over a fixed qubit count; application order is
// sequence order (leftmost first).
struct Circuit {
  int qubit_count = 0;
  std::vector<Gate> gates;

  explicit Circuit(int n = 0) : qubit_count(n) {}

  // Appends after validating that qubit indices are distinct and in range.
  void push(const Gate& gate);

  int cnot_count() const;
  bool has_controlled_roty() const;

  // Text form, one gate per line: "X q", "RY q theta", "H q", "SDGH q",
  // "CNOT c t", "CRY c t theta". Angles are printed with enough digits to
  // round-trip bit-exactly.
  std::string to_text() const;

  // Parses the text form. qubit_count < 0 infers the count as the largest
  // index mentioned plus one.
  static Circuit from_text(std::string_view text, int qubit_count = -1);
};

}  // namespace qdeut

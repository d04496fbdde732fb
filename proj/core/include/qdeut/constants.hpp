#pragma once

namespace qdeut {

// Physical constants for the oscillator-basis deuteron problem. Energies in
// MeV, lengths in fm. The continuum-extrapolation formulas use the reduced
// mass of the two-nucleon system.
struct PhysicsConstants {
  double hbar_omega = 7.0;          // oscillator spacing, MeV
  double v0 = -5.68658111;          // contact-interaction strength, MeV
  double hbar_c = 197.3269804;      // MeV fm
  double nucleon_mass = 938.91875;  // proton/neutron average, MeV

  double reduced_mass() const { return nucleon_mass / 2.0; }
};

}  // namespace qdeut

#pragma once

#include <numbers>

namespace rbsim::constants {

// Values as tabulated for the gain medium, not CODATA.
inline constexpr double kPlanck = 6.6260693e-34;  // J*s
inline constexpr double kLightSpeed = 3e8;        // m/s

// Receiver defaults (overridable through ReceiverModel).
inline constexpr double kBoltzmann = 1.38e-23;       // J/K
inline constexpr double kElectronCharge = 1.6e-19;   // C

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEuler = std::numbers::e;

}  // namespace rbsim::constants

#pragma once

// Frequency and time unit helpers. The engine works in angular frequency
// (rad/s) and seconds; interfaces quote nu/2pi in MHz and delays in ns/us.

namespace cqed::units {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// nu/2pi in MHz -> angular frequency in rad/s
inline constexpr double omega_from_mhz(double nu_mhz) { return kTwoPi * 1.0e6 * nu_mhz; }

// angular frequency in rad/s -> nu/2pi in MHz
inline constexpr double mhz_from_omega(double omega) { return omega / (kTwoPi * 1.0e6); }

inline constexpr double seconds_from_ns(double t_ns) { return t_ns * 1.0e-9; }
inline constexpr double ns_from_seconds(double t_s) { return t_s * 1.0e9; }
inline constexpr double seconds_from_us(double t_us) { return t_us * 1.0e-6; }
inline constexpr double us_from_seconds(double t_s) { return t_s * 1.0e6; }

}  // namespace cqed::units

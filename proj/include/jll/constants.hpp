#pragma once

namespace jll {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kHalfPi = 1.57079632679489661923;
inline constexpr double kLn2Pi = 1.83787706640934548356;
// Euler-Mascheroni constant
inline constexpr double kEuler = 0.57721566490153286061;

}  // namespace jll

#pragma once

namespace membrane {

/// First positive zero of the Bessel function J0, to double precision.
inline constexpr double kBesselJ01 = 2.4048255576957728;

}  // namespace membrane

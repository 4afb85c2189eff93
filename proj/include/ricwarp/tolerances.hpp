#pragma once

namespace ricwarp {

/// Numeric floors shared across the library. "Strictly positive" quantities
/// are tested against these instead of 0.
struct Tolerances {
  double unit = 1e-9;    ///< orthonormality / unit-length checks
  double num = 1e-9;     ///< round-off slack for exact identities
  double margin = 1e-8;  ///< floor for the curvature inequality margins
  double bc = 1e-6;      ///< boundary-condition matching at junctions
  double interp = 1e-3;  ///< Hermite consistency residual (relative)
};

inline constexpr const char* kToolVersion = "ricwarp 0.1.0";

}  // namespace ricwarp

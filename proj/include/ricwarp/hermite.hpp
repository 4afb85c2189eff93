#pragma once

#include <array>

namespace ricwarp {

/// Quintic Hermite evaluation from endpoint (value, d1, d2) data.
struct HermiteSegment {
  double xa, va, da, sa;  // left: value, first, second derivative
  double xb, vb, db, sb;

  /// {value, d1, d2} at x in [xa, xb].
  std::array<double, 3> eval(double x) const {
    const double L = xb - xa;
    const double u = (x - xa) / L;
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    const double H0 = 1 - 10 * u3 + 15 * u4 - 6 * u5;
    const double H1 = u - 6 * u3 + 8 * u4 - 3 * u5;
    const double H2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
    const double H3 = 0.5 * u3 - u4 + 0.5 * u5;
    const double H4 = -4 * u3 + 7 * u4 - 3 * u5;
    const double H5 = 10 * u3 - 15 * u4 + 6 * u5;
    const double v = va * H0 + da * L * H1 + sa * L * L * H2 + sb * L * L * H3 +
                     db * L * H4 + vb * H5;
    const double d0 = -30 * u2 + 60 * u3 - 30 * u4;
    const double d1 = 1 - 18 * u2 + 32 * u3 - 15 * u4;
    const double d2 = u - 4.5 * u2 + 6 * u3 - 2.5 * u4;
    const double d3 = 1.5 * u2 - 4 * u3 + 2.5 * u4;
    const double d4 = -12 * u2 + 28 * u3 - 15 * u4;
    const double d5 = 30 * u2 - 60 * u3 + 30 * u4;
    const double dv =
        (va * d0 + vb * d5) / L + da * d1 + db * d4 + sa * L * d2 + sb * L * d3;
    const double c0 = -60 * u + 180 * u2 - 120 * u3;
    const double c1 = -36 * u + 96 * u2 - 60 * u3;
    const double c2 = 1 - 9 * u + 18 * u2 - 10 * u3;
    const double c3 = 3 * u - 12 * u2 + 10 * u3;
    const double c4 = -24 * u + 84 * u2 - 60 * u3;
    const double c5 = 60 * u - 180 * u2 + 120 * u3;
    const double ddv =
        (va * c0 + vb * c5) / (L * L) + (da * c1 + db * c4) / L + sa * c2 + sb * c3;
    return {v, dv, ddv};
  }
};

}  // namespace ricwarp

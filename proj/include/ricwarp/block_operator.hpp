#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ricwarp/tolerances.hpp"

namespace ricwarp {

struct ChainProfile {
  int base = 0;                 ///< block index i in {0,1,2} (paper's 1,2,3)
  std::array<int, 3> counts{};  ///< (n1, n2, n3)
};

/// Unit direction v = mu1 v1 + mu2 v2 + mu3 v3 across the three blocks.
struct UnitDirection {
  std::array<double, 3> mu{};

  void validate(double tau_unit = Tolerances{}.unit) const {
    const double s = mu[0] * mu[0] + mu[1] * mu[1] + mu[2] * mu[2];
    if (std::abs(s - 1.0) > tau_unit)
      throw std::invalid_argument("UnitDirection: |mu|^2 = " + std::to_string(s) +
                                  " is not 1 within tolerance");
  }
};

/// Self-adjoint operator on L^2(V) for V = V1 + V2 + V3 acting as the scalar
/// lambda_ij on each subspace Vi ^ Vj. Diagonal entries lambda_ii exist only
/// when dim Vi >= 2 (otherwise Vi ^ Vi = 0) and are stored as absent.
struct BlockOperator {
  std::array<int, 3> dims{};
  double l12 = 0.0, l13 = 0.0, l23 = 0.0;
  std::optional<double> l11, l22, l33;

  int dim_v() const { return dims[0] + dims[1] + dims[2]; }

  bool diag_present(int i) const {
    return (i == 0 ? l11 : i == 1 ? l22 : l33).has_value();
  }

  /// Symmetric lookup; throws if an absent diagonal is read.
  double lambda(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == j) {
      const auto& d = (i == 0 ? l11 : i == 1 ? l22 : l33);
      if (!d)
        throw std::logic_error("BlockOperator: lambda_" + std::to_string(i + 1) +
                               std::to_string(i + 1) + " is absent (dim Vi = 1)");
      return *d;
    }
    if (i == 0) return j == 1 ? l12 : l13;
    return l23;
  }

  void validate() const {
    for (int i = 0; i < 3; ++i)
      if (dims[i] < 1) throw std::invalid_argument("BlockOperator: dims must be >= 1");
    if (dim_v() < 3) throw std::invalid_argument("BlockOperator: dim V must be >= 3");
    for (int i = 0; i < 3; ++i)
      if (diag_present(i) != (dims[i] >= 2))
        throw std::invalid_argument(
            "BlockOperator: lambda_ii must be present exactly when dim Vi >= 2");
  }
};

/// Spectrum of A_v for v = sum mu_i v_i, per the closed form in the proof of
/// the block criterion: values a_i with multiplicity dims[i]-1, the pair
/// lambda_{+-}, and the eigenvalue 0 carried by v itself (not listed).
struct AvSpectrum {
  std::array<double, 3> a{};    ///< a_i; NaN when multiplicity is 0
  std::array<int, 3> mult{};    ///< dims[i] - 1
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;

  /// The dim(V)-1 eigenvalues of A_v restricted to the complement of v, ascending.
  std::vector<double> complement_eigenvalues() const {
    std::vector<double> out;
    for (int i = 0; i < 3; ++i)
      for (int r = 0; r < mult[i]; ++r) out.push_back(a[i]);
    out.push_back(lambda_plus);
    out.push_back(lambda_minus);
    std::sort(out.begin(), out.end());
    return out;
  }
};

struct SqrtExprBounds {
  double lower = 0.0;
  double e = 0.0;
  double upper = 0.0;
};

struct HypothesisCheck {
  bool holds = true;
  double min_sum = std::numeric_limits<double>::infinity();
  ChainProfile min_profile{};
  std::optional<ChainProfile> witness;  ///< set iff holds == false
};

namespace detail {

/// The discriminant rearrangement (sum under the square root) as a polynomial
/// in mu^2 and the pairwise differences of the off-diagonal eigenvalues.
inline double sqrt_expr(double l12, double l13, double l23, const std::array<double, 3>& mu) {
  const double s1 = mu[0] * mu[0], s2 = mu[1] * mu[1], s3 = mu[2] * mu[2];
  const double d12_13 = l12 - l13, d12_23 = l12 - l23, d13_23 = l13 - l23;
  return s1 * s1 * d12_13 * d12_13 + s2 * s2 * d12_23 * d12_23 + s3 * s3 * d13_23 * d13_23 +
         2.0 * s1 * s2 * d12_13 * d12_23 + 2.0 * s1 * s3 * (-d12_13) * d13_23 +
         2.0 * s2 * s3 * (-d13_23) * (-d12_23);
}

}  // namespace detail

/// n1*lambda_{i,1} + n2*lambda_{i,2} + n3*lambda_{i,3} for an admissible profile.
/// Zero counts contribute nothing, so absent diagonals are never read.
inline double profile_sum(const BlockOperator& b, const ChainProfile& p) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j)
    if (p.counts[j] > 0) s += p.counts[j] * b.lambda(p.base, j);
  return s;
}

/// Enumerates every admissible profile (n_j <= dims[j] for j != i,
/// n_i <= dims[i]-1, n1+n2+n3 = k) for every base block i and checks
/// the strict lower bound `threshold` on each eigenvalue sum.
inline HypothesisCheck check_profile_hypothesis(const BlockOperator& b, int k,
                                                double threshold = 0.0) {
  b.validate();
  if (k < 1 || k > b.dim_v() - 1)
    throw std::invalid_argument("check_profile_hypothesis: k out of range [1, dim V - 1]");
  HypothesisCheck res;
  for (int i = 0; i < 3; ++i) {
    std::array<int, 3> cap = {b.dims[0], b.dims[1], b.dims[2]};
    cap[i] -= 1;
    for (int n1 = 0; n1 <= cap[0]; ++n1)
      for (int n2 = 0; n2 <= cap[1]; ++n2) {
        const int n3 = k - n1 - n2;
        if (n3 < 0 || n3 > cap[2]) continue;
        const ChainProfile prof{i, {n1, n2, n3}};
        const double s = profile_sum(b, prof);
        if (s < res.min_sum) {
          res.min_sum = s;
          res.min_profile = prof;
        }
      }
  }
  if (!(res.min_sum > threshold)) {
    res.holds = false;
    res.witness = res.min_profile;
  }
  return res;
}

/// Closed-form spectrum of A_v: a_i values plus lambda_{+-} = (S +- sqrt(E))/2.
/// E is clamped to 0 when cancellation leaves a tiny negative; a decisively
/// negative E is a numerical inconsistency.
inline AvSpectrum av_spectrum(const BlockOperator& b, const UnitDirection& v,
                              const Tolerances& tol = {}) {
  b.validate();
  v.validate(tol.unit);
  const double s1 = v.mu[0] * v.mu[0], s2 = v.mu[1] * v.mu[1], s3 = v.mu[2] * v.mu[2];
  AvSpectrum out;
  for (int i = 0; i < 3; ++i) {
    out.mult[i] = b.dims[i] - 1;
    if (out.mult[i] == 0) {
      out.a[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const std::array<double, 3> s = {s1, s2, s3};
    double ai = 0.0;
    for (int j = 0; j < 3; ++j) ai += s[j] * b.lambda(i, j);
    out.a[i] = ai;
  }
  const double S = s1 * (b.l12 + b.l13) + s2 * (b.l12 + b.l23) + s3 * (b.l13 + b.l23);
  double E = detail::sqrt_expr(b.l12, b.l13, b.l23, v.mu);
  const double scale = std::abs(b.l12) + std::abs(b.l13) + std::abs(b.l23);
  const double floor = tol.num * std::max(1.0, scale * scale);
  if (E < 0.0) {
    if (E < -floor)
      throw std::runtime_error("av_spectrum: discriminant " + std::to_string(E) +
                               " negative beyond round-off tolerance");
    E = 0.0;
  }
  const double root = std::sqrt(E);
  out.lambda_plus = 0.5 * (S + root);
  out.lambda_minus = 0.5 * (S - root);
  return out;
}

/// Bounds for the discriminant when the off-diagonals are sorted
/// l12 >= l13 >= l23: lower = (s1(l12-l13) + s3(l23-l13))^2 and
/// upper = (s1(l12-l13) + s2(l12-l23) + s3(l13-l23))^2 sandwich E.
inline SqrtExprBounds sqrt_expr_bounds(const std::array<double, 3>& lam,
                                       const UnitDirection& v,
                                       const Tolerances& tol = {}) {
  v.validate(tol.unit);
  const double l12 = lam[0], l13 = lam[1], l23 = lam[2];
  if (!(l12 >= l13 && l13 >= l23))
    throw std::invalid_argument("sqrt_expr_bounds: input must be sorted l12 >= l13 >= l23");
  const double s1 = v.mu[0] * v.mu[0], s2 = v.mu[1] * v.mu[1], s3 = v.mu[2] * v.mu[2];
  SqrtExprBounds out;
  const double lo = s1 * (l12 - l13) + s3 * (l23 - l13);
  const double hi = s1 * (l12 - l13) + s2 * (l12 - l23) + s3 * (l13 - l23);
  out.lower = lo * lo;
  out.upper = hi * hi;
  out.e = detail::sqrt_expr(l12, l13, l23, v.mu);
  return out;
}

/// Relabels blocks so the off-diagonal eigenvalues are sorted descending.
/// Returns the sorted triple and the permutation p with sorted[r] belonging to
/// the pair {p[r] blocks}, so witnesses can be mapped back.
inline std::pair<std::array<double, 3>, std::array<int, 3>> sort_offdiagonals(
    double l12, double l13, double l23) {
  std::array<std::pair<double, int>, 3> v = {{{l12, 0}, {l13, 1}, {l23, 2}}};
  std::stable_sort(v.begin(), v.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  return {{v[0].first, v[1].first, v[2].first}, {v[0].second, v[1].second, v[2].second}};
}

/// True iff the sum of the k smallest elements is strictly positive
/// (equivalently, the sum of ANY k elements is).
inline bool k_positive(std::vector<double> eigs, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > eigs.size())
    throw std::invalid_argument("k_positive: k out of range");
  std::partial_sort(eigs.begin(), eigs.begin() + k, eigs.end());
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += eigs[i];
  return s > 0.0;
}

/// Visits the triangular grid {(i/r, j/r, (r-i-j)/r)} on the mu^2 simplex,
/// then the three vertices and edge midpoints (extrema live on vertex/edge
/// configurations in the case analysis, so these are always sampled).
template <class F>
void for_each_simplex_point(int edge_resolution, F&& fn) {
  const int r = std::max(1, edge_resolution);
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= r - i; ++j) {
      const int l = r - i - j;
      fn(std::array<double, 3>{double(i) / r, double(j) / r, double(l) / r});
    }
  fn(std::array<double, 3>{1, 0, 0});
  fn(std::array<double, 3>{0, 1, 0});
  fn(std::array<double, 3>{0, 0, 1});
  fn(std::array<double, 3>{0.5, 0.5, 0.0});
  fn(std::array<double, 3>{0.5, 0.0, 0.5});
  fn(std::array<double, 3>{0.0, 0.5, 0.5});
}

struct MinChainValue {
  double value = std::numeric_limits<double>::infinity();
  std::array<double, 3> mu_sq{};  ///< attaining point on the mu^2 simplex
};

/// Minimum over the sampled mu^2 simplex of the sum of the k smallest
/// eigenvalues of A_v restricted to the complement of v. Approximates the
/// minimum k-chain value of the block operator.
inline MinChainValue min_chain_value_analytic(const BlockOperator& b, int k,
                                              int edge_resolution = 200,
                                              const Tolerances& tol = {}) {
  b.validate();
  if (k < 1 || k > b.dim_v() - 1)
    throw std::invalid_argument("min_chain_value_analytic: k out of range");
  MinChainValue best;
  std::vector<double> evs;
  evs.reserve(b.dim_v() - 1);
  for_each_simplex_point(edge_resolution, [&](const std::array<double, 3>& s) {
    const UnitDirection v{{std::sqrt(s[0]), std::sqrt(s[1]), std::sqrt(s[2])}};
    const AvSpectrum sp = av_spectrum(b, v, tol);
    evs.clear();
    for (int i = 0; i < 3; ++i)
      for (int r = 0; r < sp.mult[i]; ++r) evs.push_back(sp.a[i]);
    evs.push_back(sp.lambda_plus);
    evs.push_back(sp.lambda_minus);
    std::partial_sort(evs.begin(), evs.begin() + k, evs.end());
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += evs[i];
    if (sum < best.value) {
      best.value = sum;
      best.mu_sq = s;
    }
  });
  return best;
}

}  // namespace ricwarp

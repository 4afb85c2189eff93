#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ricwarp/hermite.hpp"
#include "ricwarp/warp_state.hpp"

namespace ricwarp {

struct SegmentMarks {
  double t0 = 0.0;  ///< cap start (h = 0)
  double tc = 0.0;  ///< cap/core junction (always 0 before rescaling)
  double t2 = 0.0;  ///< core/bend junction
  double t3 = 0.0;  ///< bend/neck junction
  double t1 = 0.0;  ///< neck end
};

struct CapInfo {
  double r_prime = 0.0;
  double n_prime = 0.0;
};

/// A sampled doubly warped product metric on [t0, t1].
struct WarpedMetric {
  int p = 0, q = 0;
  std::vector<WarpState> samples;
  SegmentMarks marks{};
  std::optional<CapInfo> cap;  ///< set when the first sample is a cap endpoint

  /// Strictly increasing grid, positive scales (the cap endpoint may have
  /// h = 0), and Hermite consistency of the recorded derivatives.
  void validate(double tau_interp = Tolerances{}.interp) const {
    if (samples.size() < 2) throw std::invalid_argument("WarpedMetric: need >= 2 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      const bool cap_end = (i == 0 && cap.has_value());
      if (!(s.f > 0.0)) throw std::invalid_argument("WarpedMetric: f must be positive");
      if (!cap_end && !(s.h > 0.0))
        throw std::invalid_argument("WarpedMetric: h must be positive at interior samples");
      if (i > 0 && !(s.t > samples[i - 1].t))
        throw std::invalid_argument("WarpedMetric: grid must be strictly increasing");
    }
    // Hermite consistency: (v_b - v_a)/L = (d_a + d_b)/2 - L (s_b - s_a)/12
    // up to O(L^4) for data consistent with a smooth function. Catches
    // derivative columns inconsistent with values; deliberately lenient so
    // pointwise curvature faults still reach verification.
    double worst = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const auto& a = samples[i - 1];
      const auto& b = samples[i];
      const double L = b.t - a.t;
      auto check = [&](double va, double da, double sa, double vb, double db, double sb) {
        const double scale = std::max({1.0, std::abs(va), std::abs(vb)});
        const double res = (vb - va) / L - 0.5 * (da + db) + L * (sb - sa) / 12.0;
        worst = std::max(worst, std::abs(res) / scale);
      };
      check(a.h, a.h1, a.h2, b.h, b.h1, b.h2);
      check(a.f, a.f1, a.f2, b.f, b.f1, b.f2);
    }
    if (worst > tau_interp)
      throw std::invalid_argument("WarpedMetric: derivative columns inconsistent with values "
                                  "(Hermite residual " + std::to_string(worst) + ")");
  }

  WarpState interpolate(std::size_t i, double t) const {
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    WarpState s;
    s.t = t;
    const auto hv = HermiteSegment{a.t, a.h, a.h1, a.h2, b.t, b.h, b.h1, b.h2}.eval(t);
    const auto fv = HermiteSegment{a.t, a.f, a.f1, a.f2, b.t, b.f, b.f1, b.f2}.eval(t);
    s.h = hv[0];
    s.h1 = hv[1];
    s.h2 = hv[2];
    s.f = fv[0];
    s.f1 = fv[1];
    s.f2 = fv[2];
    return s;
  }
};

struct VerifyOptions {
  double tau_margin = Tolerances{}.margin;
  int report_simplex_resolution = 32;  ///< per-row direct-minimum sweep
  bool midpoints = true;
  bool keep_rows = false;
  Tolerances tol{};
};

/// Aggregated verification result over a metric grid.
struct CurvatureReport {
  bool pass = false;
  int k = 0;
  std::size_t rows_checked = 0;
  std::array<double, 4> min_margin{};    ///< global minima of m1..m4
  std::array<double, 4> min_margin_t{};  ///< where they occur
  double min_direct = std::numeric_limits<double>::infinity();
  double min_direct_t = 0.0;
  double worst_value = std::numeric_limits<double>::infinity();  ///< smallest margin overall
  double worst_t = 0.0;
  int worst_inequality = 0;
  bool all_rows_positive = true;
  std::optional<double> first_failure_t;
  std::vector<RickRow> rows;  ///< populated when keep_rows is set

  void absorb(const RickRow& row, double tau_margin) {
    const std::array<double, 4> m = {row.margins.m1, row.margins.m2, row.margins.m3,
                                     row.margins.m4};
    if (rows_checked == 0)
      for (int i = 0; i < 4; ++i) {
        min_margin[i] = m[i];
        min_margin_t[i] = row.t;
      }
    else
      for (int i = 0; i < 4; ++i)
        if (m[i] < min_margin[i]) {
          min_margin[i] = m[i];
          min_margin_t[i] = row.t;
        }
    if (row.direct_min < min_direct) {
      min_direct = row.direct_min;
      min_direct_t = row.t;
    }
    if (row.margins.min() < worst_value) {
      worst_value = row.margins.min();
      worst_t = row.t;
      worst_inequality = row.margins.argmin();
    }
    if (!row.positive || !row.margins.all_positive(tau_margin)) {
      all_rows_positive = false;
      if (!first_failure_t) first_failure_t = row.t;
    }
    ++rows_checked;
  }

  void finalize() {
    pass = all_rows_positive && min_direct > 0.0;
  }
};

namespace detail {

inline RickRow verify_row(const WarpState& s, const WarpedMetric& m, int k,
                          const VerifyOptions& opt, bool singular_cap) {
  RickRow row;
  if (singular_cap) {
    const double inv = 1.0 / (m.cap->n_prime * m.cap->n_prime);
    row = rick_positive_at_cap(inv, s.f, s.t, m.p, m.q, k, opt.tol, s.f1);
  } else {
    row = rick_positive_at(s, m.p, m.q, k, opt.tol);
  }
  if (opt.report_simplex_resolution > 0) {
    const BlockOperator block =
        singular_cap
            ? cap_limit_block(1.0 / (m.cap->n_prime * m.cap->n_prime), s.f, m.p, m.q, s.f1)
            : curvature_block(s, m.p, m.q);
    row.direct_min =
        min_chain_value_analytic(block, k, opt.report_simplex_resolution, opt.tol).value;
  } else {
    row.direct_min = std::numeric_limits<double>::infinity();
  }
  return row;
}

}  // namespace detail

/// Runs both certification routes at every sample (and interval midpoints),
/// using the analytic cap evaluation at a singular endpoint. A failing sample
/// produces a fail verdict with the worst row recorded, not an exception.
inline CurvatureReport verify_metric(const WarpedMetric& metric, int k,
                                     const VerifyOptions& opt = {}) {
  metric.validate(opt.tol.interp);
  require_admissible_k(metric.p, metric.q, k);
  if (metric.samples.front().h <= 0.0 && !metric.cap)
    throw std::invalid_argument("verify_metric: singular first sample without cap info");
  CurvatureReport rep;
  rep.k = k;
  auto take = [&](const RickRow& row) {
    rep.absorb(row, opt.tau_margin);
    if (opt.keep_rows) rep.rows.push_back(row);
  };
  const std::size_t n = metric.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool singular = (i == 0 && metric.samples[i].h <= 0.0);
    take(detail::verify_row(metric.samples[i], metric, k, opt, singular));
    if (opt.midpoints && i + 1 < n) {
      const WarpState mid =
          metric.interpolate(i, 0.5 * (metric.samples[i].t + metric.samples[i + 1].t));
      if (mid.h > 0.0 && mid.f > 0.0)
        take(detail::verify_row(mid, metric, k, opt, false));
    }
  }
  rep.finalize();
  return rep;
}

}  // namespace ricwarp

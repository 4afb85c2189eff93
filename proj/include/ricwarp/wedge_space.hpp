#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ricwarp/block_operator.hpp"
#include "ricwarp/rng.hpp"
#include "ricwarp/tolerances.hpp"

namespace ricwarp {

/// Coordinates on L^2(R^n) in the basis {e_i ^ e_j : i < j}, which is
/// orthonormal for the induced inner product
/// <v1^v2, v3^v4> = <v1,v3><v2,v4> - <v1,v4><v2,v3>.
class WedgeBasis {
 public:
  explicit WedgeBasis(int n) : n_(n), index_(n, std::vector<int>(n, -1)) {
    if (n < 2) throw std::invalid_argument("WedgeBasis: need dim V >= 2");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        index_[i][j] = index_[j][i] = static_cast<int>(pairs_.size());
        pairs_.emplace_back(i, j);
      }
  }

  int n() const { return n_; }
  int dim() const { return static_cast<int>(pairs_.size()); }
  int index(int i, int j) const { return index_[i][j]; }
  std::pair<int, int> pair(int idx) const { return pairs_[idx]; }

  Eigen::VectorXd wedge(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
    for (int idx = 0; idx < dim(); ++idx) {
      const auto [i, j] = pairs_[idx];
      out[idx] = v[i] * w[j] - v[j] * w[i];
    }
    return out;
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<int>> index_;
};

/// Realizes a BlockOperator densely on L^2(R^n) with the standard basis
/// grouped into blocks. Diagonal in the bivector basis: the pair (i, j)
/// carries lambda_{block(i), block(j)}.
inline Eigen::MatrixXd assemble_dense(const BlockOperator& b) {
  b.validate();
  const int n = b.dim_v();
  const WedgeBasis wb(n);
  std::vector<int> block(n);
  int at = 0;
  for (int i = 0; i < 3; ++i)
    for (int r = 0; r < b.dims[i]; ++r) block[at++] = i;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(wb.dim(), wb.dim());
  for (int idx = 0; idx < wb.dim(); ++idx) {
    const auto [i, j] = wb.pair(idx);
    A(idx, idx) = b.lambda(block[i], block[j]);
  }
  return A;
}

namespace detail {

inline void require_unit(const Eigen::VectorXd& v, double tau_unit, const char* who) {
  if (std::abs(v.squaredNorm() - 1.0) > tau_unit)
    throw std::invalid_argument(std::string(who) + ": vector is not unit length");
}

inline void require_orthonormal(const Eigen::MatrixXd& frame, double tau_unit,
                                const char* who) {
  const Eigen::MatrixXd g = frame.transpose() * frame;
  const double dev = (g - Eigen::MatrixXd::Identity(g.rows(), g.cols()))
                         .cwiseAbs()
                         .maxCoeff();
  if (dev > tau_unit)
    throw std::invalid_argument(std::string(who) + ": frame is not orthonormal");
}

}  // namespace detail

/// Value of A on the k-chain spanned by the orthonormal frame (v0, ..., vk):
/// sum_i <A(v0 ^ v_i), v0 ^ v_i>.
inline double chain_value(const Eigen::MatrixXd& A, const Eigen::MatrixXd& frame,
                          const Tolerances& tol = {}) {
  const int n = static_cast<int>(frame.rows());
  const int k = static_cast<int>(frame.cols()) - 1;
  if (k < 1 || k + 1 > n) throw std::invalid_argument("chain_value: need 2 <= k+1 <= dim V");
  detail::require_orthonormal(frame, tol.unit, "chain_value");
  const WedgeBasis wb(n);
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    const Eigen::VectorXd w = wb.wedge(frame.col(0), frame.col(i));
    sum += w.dot(A * w);
  }
  return sum;
}

/// A_v with <A_v x, y> = <A(v^x), v^y>, as a dense symmetric matrix. v lies in
/// the kernel since v ^ v = 0.
inline Eigen::MatrixXd build_av(const Eigen::MatrixXd& A, const Eigen::VectorXd& v,
                                const Tolerances& tol = {}) {
  const int n = static_cast<int>(v.size());
  detail::require_unit(v, tol.unit, "build_av");
  const WedgeBasis wb(n);
  Eigen::MatrixXd B(wb.dim(), n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(wb.dim());
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      // (v ^ e_j) has coordinate +v_i on the pair (i, j) when i < j and -v_i when i > j
      col[wb.index(i, j)] = (i < j) ? v[i] : -v[i];
    }
    B.col(j) = col;
  }
  Eigen::MatrixXd Av = B.transpose() * (A * B);
  return 0.5 * (Av + Av.transpose());
}

/// Eigenvalues of A_v restricted to the orthogonal complement of v, ascending.
/// Uses the Householder reflection mapping v to +-e1 and drops that row/column.
inline Eigen::VectorXd complement_eigenvalues(const Eigen::MatrixXd& Av,
                                              const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  Eigen::VectorXd w = v;
  w[0] += (v[0] >= 0 ? 1.0 : -1.0) * v.norm();
  const double wn = w.norm();
  Eigen::MatrixXd M;
  if (wn < 1e-14) {
    M = Av;  // v is already +-e1
  } else {
    const Eigen::VectorXd u = w / wn;
    const Eigen::MatrixXd AvU = Av - 2.0 * (Av * u) * u.transpose();
    M = AvU - 2.0 * u * (u.transpose() * AvU);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.block(1, 1, n - 1, n - 1),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline Eigen::VectorXd random_unit_vector(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = rng.gaussian();
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

/// Minimum over `samples` uniformly random unit directions v of the sum of the
/// k smallest eigenvalues of A_v on the complement of v. Deterministic given
/// the seed; independent of the closed-form block route.
inline double min_chain_value_bruteforce(const Eigen::MatrixXd& A, int k, int samples,
                                         std::uint64_t seed) {
  const int D = static_cast<int>(A.rows());
  // D = n(n-1)/2 determines n
  int n = 2;
  while (n * (n - 1) / 2 < D) ++n;
  if (n * (n - 1) / 2 != D)
    throw std::invalid_argument("min_chain_value_bruteforce: A is not on a wedge space");
  if (k < 1 || k > n - 1) throw std::invalid_argument("min_chain_value_bruteforce: k out of range");
  if (samples < 1) throw std::invalid_argument("min_chain_value_bruteforce: samples must be >= 1");
  Rng rng(seed);
  const bool diagonal = A.isDiagonal(1e-300);
  const Eigen::VectorXd diag = A.diagonal();
  const WedgeBasis wb(n);
  double best = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd B(D, n);
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd v = random_unit_vector(n, rng);
    Eigen::MatrixXd Av;
    if (diagonal) {
      B.setZero();
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          if (i == j) continue;
          B(wb.index(i, j), j) = (i < j) ? v[i] : -v[i];
        }
      Av = B.transpose() * diag.asDiagonal() * B;
    } else {
      Av = build_av(A, v);
    }
    const Eigen::VectorXd evs = complement_eigenvalues(Av, v);
    best = std::min(best, evs.head(k).sum());
  }
  return best;
}

}  // namespace ricwarp

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "noon_ent/fock.hpp"

namespace noon_ent::testing {

// Random noisy-N00N state with n_max in 1..3; each coherence is zero with
// probability zero_coh, otherwise a random fraction of its positivity bound.
inline NoisyNoonOperator random_state(std::mt19937_64& rng, double zero_coh = 0.3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 1 + static_cast<int>(rng() % 3);
  std::vector<double> a(n), b(n);
  std::vector<Complex> c(n);
  double total = u(rng);
  for (int i = 0; i < n; ++i) {
    a[i] = u(rng);
    b[i] = u(rng);
    total += a[i] + b[i];
  }
  for (int i = 0; i < n; ++i) {
    a[i] /= total;
    b[i] /= total;
    if (u(rng) < zero_coh) {
      c[i] = 0.0;
    } else {
      const double r = std::sqrt(a[i] * b[i]) * (0.05 + 0.95 * u(rng));
      c[i] = std::polar(r, 2.0 * std::numbers::pi * u(rng));
    }
  }
  const double v = 1.0 - std::accumulate(a.begin(), a.end(), 0.0) -
                   std::accumulate(b.begin(), b.end(), 0.0);
  return make_noisy_noon(v, a, b, c, true);
}

// Random Hermitian noisy-N00N operator (not a state), n_max in 1..3.
inline NoisyNoonOperator random_operator(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const int n = 1 + static_cast<int>(rng() % 3);
  std::vector<double> a(n), b(n);
  std::vector<Complex> c(n);
  for (int i = 0; i < n; ++i) {
    a[i] = g(rng);
    b[i] = g(rng);
    c[i] = Complex{g(rng), g(rng)};
  }
  return make_noisy_noon(g(rng), a, b, c, false);
}

inline Eigen::VectorXcd random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int k = 0; k < dim; ++k) v(k) = Complex{g(rng), g(rng)};
  return v / v.norm();
}

inline ProductVector random_product(std::mt19937_64& rng, int dim) {
  return ProductVector(random_unit(rng, dim), random_unit(rng, dim));
}

// Brute-force sup over product vectors of <a,b|L|a,b> by alternating
// maximization from many random starts.
inline double brute_force_sup(const DensePairOperator& op, std::mt19937_64& rng,
                              int starts = 200) {
  const int d = op.local_dim();
  double best = -1e300;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXcd a = random_unit(rng, d);
    Eigen::VectorXcd b = random_unit(rng, d);
    double val = -1e300;
    for (int it = 0; it < 200; ++it) {
      Eigen::MatrixXcd lb = Eigen::MatrixXcd::Zero(d, d);
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
          for (int j = 0; j < d; ++j)
            for (int l = 0; l < d; ++l)
              lb(i, k) += std::conj(b(j)) * op.element(i, j, k, l) * b(l);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(lb);
      a = ea.eigenvectors().col(d - 1);
      Eigen::MatrixXcd la = Eigen::MatrixXcd::Zero(d, d);
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
          for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
              la(j, l) += std::conj(a(i)) * op.element(i, j, k, l) * a(k);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(la);
      b = eb.eigenvectors().col(d - 1);
      const double next = eb.eigenvalues()(d - 1);
      if (std::abs(next - val) < 1e-15) break;
      val = next;
    }
    best = std::max(best, val);
  }
  return best;
}

// Independent partial transpose over mode b, written directly on the dense
// index map <i,j|rho^T_B|k,l> = <i,l|rho|k,j>.
inline Eigen::MatrixXcd partial_transpose_b(const DensePairOperator& rho) {
  const int d = rho.local_dim();
  Eigen::MatrixXcd out(rho.dim(), rho.dim());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out(i * d + j, k * d + l) = rho.element(i, l, k, j);
  return out;
}

}  // namespace noon_ent::testing

#include "noon_ent/nonclassicality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include <Eigen/Eigenvalues>

#include "noon_ent/errors.hpp"

namespace noon_ent {

double ppt_min_eigenvalue(const DensePairOperator& state, Mode mode) {
  const int d = state.local_dim();
  Eigen::MatrixXcd pt(state.dim(), state.dim());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          const Complex v = state.element(i, j, k, l);
          if (mode == Mode::b) {
            pt(i * d + l, k * d + j) = v;
          } else {
            pt(k * d + j, i * d + l) = v;
          }
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double ppt_min_eigenvalue(const NoisyNoonOperator& state, Mode mode) {
  return ppt_min_eigenvalue(to_dense(state), mode);
}

double DeltaDerivativeSeries::coefficient(Mode mode, int order) const {
  if (order == 0) mode = Mode::a;
  for (const auto& t : terms) {
    if (t.mode == mode && t.order == order) return t.coefficient;
  }
  return 0.0;
}

int DeltaDerivativeSeries::max_order(Mode mode) const {
  int best = 0;
  for (const auto& t : terms) {
    if (t.mode == mode || t.order == 0) best = std::max(best, t.order);
  }
  return best;
}

DeltaDerivativeSeries glauber_p(const NoisyNoonOperator& state) {
  for (int i = 1; i <= state.n_max(); ++i) {
    if (state.coherence(i) != Complex{}) throw NotDiagonal("state has nonzero coherences");
  }
  std::map<std::pair<int, int>, double> acc;  // (order, mode)
  auto add = [&](Mode mode, int order, double c) {
    if (order == 0) mode = Mode::a;
    acc[{order, static_cast<int>(mode)}] += c;
  };
  add(Mode::a, 0, state.vacuum());
  for (int k = 1; k <= state.n_max(); ++k) {
    double binom = 1.0;     // C(k, j)
    double factorial = 1.0;  // j!
    for (int j = 0; j <= k; ++j) {
      if (j > 0) {
        binom *= static_cast<double>(k - j + 1) / j;
        factorial *= j;
      }
      const double w = binom / factorial;
      if (state.diag_a(k) != 0.0) add(Mode::a, j, state.diag_a(k) * w);
      if (state.diag_b(k) != 0.0) add(Mode::b, j, state.diag_b(k) * w);
    }
  }
  DeltaDerivativeSeries s;
  for (const auto& [key, c] : acc) {
    s.terms.push_back({static_cast<Mode>(key.second), key.first, c});
  }
  return s;
}

bool p_is_classical(const DeltaDerivativeSeries& series) {
  return std::all_of(series.terms.begin(), series.terms.end(), [](const DeltaDerivativeTerm& t) {
    return t.order == 0 && t.coefficient >= 0.0;
  });
}

}  // namespace noon_ent

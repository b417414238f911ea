#include <algorithm>
#include <cmath>

#include "noon_ent/sep.hpp"
#include "sep_internal.hpp"

namespace noon_ent {

std::string to_string(SepBranch branch) {
  switch (branch) {
    case SepBranch::trivial_row1: return "trivial_row1";
    case SepBranch::trivial_row2: return "trivial_row2";
    case SepBranch::trivial_row3: return "trivial_row3";
    case SepBranch::trivial_row4: return "trivial_row4";
    case SepBranch::nontrivial_plus: return "nontrivial_plus";
    case SepBranch::nontrivial_minus: return "nontrivial_minus";
    case SepBranch::degenerate_phase: return "degenerate_phase";
    case SepBranch::mixed: return "mixed";
    case SepBranch::numeric: return "numeric";
  }
  return "unknown";
}

Eigen::MatrixXcd reduced_on_a(const DensePairOperator& op, const Eigen::VectorXcd& b) {
  const int d = op.local_dim();
  if (b.size() != d) throw DimensionMismatch("vector dimension differs from operator");
  const auto& m = op.matrix();
  Eigen::MatrixXcd out(d, d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      out(k, l) = b.dot(m.block(k * d, l * d, d, d) * b);
    }
  }
  return out;
}

Eigen::MatrixXcd reduced_on_b(const DensePairOperator& op, const Eigen::VectorXcd& a) {
  const int d = op.local_dim();
  if (a.size() != d) throw DimensionMismatch("vector dimension differs from operator");
  const auto& m = op.matrix();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      const Complex w = std::conj(a(k)) * a(l);
      if (w != Complex{}) out += w * m.block(k * d, l * d, d, d);
    }
  }
  return out;
}

Eigen::MatrixXcd reduced_on_a(const NoisyNoonOperator& op, const Eigen::VectorXcd& b) {
  const int d = static_cast<int>(b.size());
  if (d < op.local_dim()) throw DimensionMismatch("vector shorter than operator truncation");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  const double b0 = std::norm(b(0));
  out(0, 0) = op.vacuum() * b0;
  for (int i = 1; i <= op.n_max(); ++i) {
    out(0, 0) += op.diag_b(i) * std::norm(b(i));
    out(i, i) = op.diag_a(i) * b0;
    out(i, 0) = op.coherence(i) * std::conj(b(0)) * b(i);
    out(0, i) = std::conj(out(i, 0));
  }
  return out;
}

Eigen::MatrixXcd reduced_on_b(const NoisyNoonOperator& op, const Eigen::VectorXcd& a) {
  const int d = static_cast<int>(a.size());
  if (d < op.local_dim()) throw DimensionMismatch("vector shorter than operator truncation");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  const double a0 = std::norm(a(0));
  out(0, 0) = op.vacuum() * a0;
  for (int i = 1; i <= op.n_max(); ++i) {
    out(0, 0) += op.diag_a(i) * std::norm(a(i));
    out(i, i) = op.diag_b(i) * a0;
    out(0, i) = op.coherence(i) * a(0) * std::conj(a(i));
    out(i, 0) = std::conj(out(0, i));
  }
  return out;
}

namespace {

template <class Op>
double residual_impl(const Op& op, const ProductVector& v, double g) {
  const auto& a = v.a();
  const auto& b = v.b();
  const double ra = (reduced_on_a(op, b) * a - g * a).norm();
  const double rb = (reduced_on_b(op, a) * b - g * b).norm();
  return std::max(ra, rb);
}

}  // namespace

double sep_residual(const NoisyNoonOperator& op, const ProductVector& v, double g) {
  return residual_impl(op, v, g);
}

double sep_residual(const DensePairOperator& op, const ProductVector& v, double g) {
  return residual_impl(op, v, g);
}

double sep_residual(const NoisyNoonOperator& op, const SepSolution& sol) {
  return residual_impl(op, sol.vec, sol.g);
}

double sep_residual(const DensePairOperator& op, const SepSolution& sol) {
  return residual_impl(op, sol.vec, sol.g);
}

std::vector<double> distinct_eigenvalues(const SepSolutionSet& set, double tol) {
  std::vector<double> gs;
  gs.reserve(set.solutions.size());
  for (const auto& s : set.solutions) gs.push_back(s.g);
  std::sort(gs.begin(), gs.end());
  std::vector<double> out;
  for (double g : gs) {
    if (out.empty() || g - out.back() > tol) out.push_back(g);
  }
  return out;
}

namespace detail {

namespace {

Eigen::VectorXcd canonical_factor(const Eigen::VectorXcd& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double r = std::abs(v(k));
    if (r > 1e-6) return v * (std::conj(v(k)) / r);
  }
  return v;
}

// Lexicographic order on rounded amplitudes; rounding keeps the order stable
// against last-bit differences.
bool amplitude_less(const ProductVector& x, const ProductVector& y) {
  auto key = [](double t) { return std::round(t * 1e9); };
  auto cmp = [&](const Eigen::VectorXcd& u, const Eigen::VectorXcd& w) {
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      const double ur = key(u(k).real()), wr = key(w(k).real());
      if (ur != wr) return ur < wr ? -1 : 1;
      const double ui = key(u(k).imag()), wi = key(w(k).imag());
      if (ui != wi) return ui < wi ? -1 : 1;
    }
    return 0;
  };
  if (int c = cmp(x.a(), y.a()); c != 0) return c < 0;
  return cmp(x.b(), y.b()) < 0;
}

}  // namespace

ProductVector canonical_phase(const ProductVector& v) {
  return ProductVector::normalized(canonical_factor(v.a()), canonical_factor(v.b()));
}

void sort_and_deduplicate(std::vector<SepSolution>& sols) {
  constexpr double g_tol = 1e-8;
  constexpr double overlap_tol = 1e-8;
  auto g_key = [](double g) { return std::round(g / g_tol); };
  std::stable_sort(sols.begin(), sols.end(), [&](const SepSolution& x, const SepSolution& y) {
    const double kx = g_key(x.g), ky = g_key(y.g);
    if (kx != ky) return kx < ky;
    return amplitude_less(x.vec, y.vec);
  });
  std::vector<SepSolution> kept;
  kept.reserve(sols.size());
  for (auto& s : sols) {
    bool duplicate = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (std::abs(it->g - s.g) > 2 * g_tol) break;
      if (transition_probability(it->vec, s.vec) >= 1.0 - overlap_tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(std::move(s));
  }
  sols = std::move(kept);
}

void finalize(SepSolutionSet& set) {
  sort_and_deduplicate(set.solutions);
  if (set.solutions.empty()) {
    set.g_max = 0.0;
    return;
  }
  set.g_max = set.solutions.front().g;
  for (const auto& s : set.solutions) set.g_max = std::max(set.g_max, s.g);
}

}  // namespace detail

}  // namespace noon_ent

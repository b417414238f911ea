#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "noon_ent/sep.hpp"
#include "sep_internal.hpp"

namespace noon_ent {

namespace {

// Amplitudes relative to a vacuum amplitude of one: a ~ |0> + sum x_j |j>,
// b ~ |0> + sum y_j |j>.
using Amplitudes = std::map<int, Complex>;

struct MuNu {
  double mu;
  double nu;
  bool degenerate;
};

class AnalyticSolver {
 public:
  explicit AnalyticSolver(const NoisyNoonOperator& op)
      : op_(op),
        d_(op.local_dim()),
        scale_(std::max(op.scale(), 1e-300)),
        small_(1e-12 * scale_),
        residual_tol_(std::max(kSepResidualTol,
                               64.0 * std::numeric_limits<double>::epsilon() * scale_)) {}

  SepSolutionSet run() {
    trivial_rows();
    for (int i = 1; i <= op_.n_max(); ++i) {
      if (coupled(i)) single_index(i);
    }
    two_index_patterns();
    SepSolutionSet set;
    set.solutions = std::move(out_);
    detail::finalize(set);
    return set;
  }

 private:
  bool coupled(int i) const { return op_.coherence(i) != Complex{}; }
  bool tiny(double x) const { return std::abs(x) <= small_; }

  void push(ProductVector v, SepBranch branch, int i, int j, int phase, bool required) {
    const double g = expectation(op_, v);
    const double res = sep_residual(op_, v, g);
    if (res > residual_tol_) {
      if (required) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "closed-form solution at Fock index " << i << " failed substitution (residual "
            << res << "); operator needs manual inspection";
        throw DegenerateUnresolvable(msg.str());
      }
      return;
    }
    out_.push_back(SepSolution{g, std::move(v), branch, i, j, phase, res});
  }

  void emit(const Amplitudes& x, const Amplitudes& y, SepBranch branch, int i, int j,
            int phase, bool required) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(d_);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(d_);
    a(0) = b(0) = 1.0;
    for (const auto& [k, z] : x) a(k) += z;
    for (const auto& [k, z] : y) b(k) += z;
    push(ProductVector::normalized(a, b), branch, i, j, phase, required);
  }

  void trivial_rows() {
    push(ProductVector::fock(d_, 0, 0), SepBranch::trivial_row1, 0, 0, -1, true);
    for (int i = 1; i < d_; ++i) {
      push(ProductVector::fock(d_, i, 0), SepBranch::trivial_row2, i, 0, -1, true);
      push(ProductVector::fock(d_, 0, i), SepBranch::trivial_row3, i, 0, -1, true);
    }
    for (int i = 1; i < d_; ++i) {
      for (int j = 1; j < d_; ++j) {
        push(ProductVector::fock(d_, i, j), SepBranch::trivial_row4, i, j, -1, true);
      }
    }
  }

  // mu, nu for a single coupled index and sign s.
  std::optional<MuNu> mu_nu(int i, int s) const {
    const double l0 = op_.vacuum();
    const double a = op_.diag_a(i);
    const double b = op_.diag_b(i);
    const double c = std::norm(op_.coherence(i));
    const double gamma = std::sqrt(c);

    if (tiny(a - b)) {
      // All q coincide; the ratio cancels to one.
      const double m = a + s * gamma;
      return MuNu{m, m, true};
    }
    const double q_aa = a * (a - l0) - c;
    const double q_bb = b * (b - l0) - c;
    const double q_ab = a * (b - l0) - c;
    const double q_ba = b * (a - l0) - c;
    double prod = q_ab * q_ba;
    const double q_tol = 1e-12 * scale_ * scale_;
    if (prod < 0.0) {
      if (prod < -q_tol * q_tol) return std::nullopt;
      prod = 0.0;
    }
    const double r = gamma * std::sqrt(prod);
    const double det = a * b - c;
    bool degenerate = false;

    // (L q_x + s r) / q_d, or the equivalent form q_x (AB - c) / (L q_x - s r)
    // when q_d vanishes.
    auto solve = [&](double l, double q_x, double q_d) -> std::optional<double> {
      if (std::abs(q_d) > q_tol) return (l * q_x + s * r) / q_d;
      degenerate = true;
      const double den = l * q_x - s * r;
      if (std::abs(den) <= q_tol * scale_) {
        // Nonzero over zero: this branch runs off to infinity.
        if (std::abs(q_x * det) > q_tol * scale_) return std::nullopt;
        std::ostringstream msg;
        msg << "coupled Fock index " << i << ": both closed forms are 0/0";
        throw DegenerateUnresolvable(msg.str());
      }
      return q_x * det / den;
    };
    const auto mu = solve(a, q_ba, q_aa);
    const auto nu = solve(b, q_ab, q_bb);
    if (!mu || !nu) return std::nullopt;
    return MuNu{*mu, *nu, degenerate};
  }

  void single_index(int i) {
    const double l0 = op_.vacuum();
    const double a = op_.diag_a(i);
    const double b = op_.diag_b(i);
    const Complex gamma = op_.coherence(i);
    for (int s : {1, -1}) {
      const auto mn = mu_nu(i, s);
      if (!mn) continue;
      const double mu = mn->mu;
      const double nu = mn->nu;

      double x_weight;
      if (tiny(mu) && tiny(nu) && tiny(l0)) {
        // 0/0 amplitudes: the limit fixes |x|^2 |y|^2 = 1 and |y/x|^2 = A/B.
        if (!(a * b > 0.0)) continue;
        x_weight = std::sqrt(b / a);
      } else {
        if (tiny(mu) || tiny(nu)) continue;
        x_weight = (mu - l0) / nu;
        const double y_weight = (nu - l0) / mu;
        if (!(x_weight > 0.0) || !(y_weight > 0.0)) continue;
      }
      const Complex r = (nu - a) / gamma;
      const double x_mod = std::sqrt(x_weight);

      const SepBranch branch = mn->degenerate ? SepBranch::degenerate_phase
                               : s > 0        ? SepBranch::nontrivial_plus
                                              : SepBranch::nontrivial_minus;
      for (int k = 0; k < 4; ++k) {
        const Complex phase = std::polar(1.0, k * std::numbers::pi / 2);
        Amplitudes x{{i, x_mod * phase}};
        Amplitudes y{{i, r * x_mod * phase}};
        emit(x, y, branch, i, 0, k, true);
      }
    }
  }

  void two_index_patterns() {
    const double l0 = op_.vacuum();
    const int n = op_.n_max();
    auto positive = [](double w) { return w > 0.0 && std::isfinite(w); };

    for (int j = 1; j <= n; ++j) {
      if (coupled(j)) continue;
      // Kernel on index j from both sides: nu = A_j, mu = B_j.
      const double nu = op_.diag_a(j);
      const double mu = op_.diag_b(j);
      if (!tiny(nu) && !tiny(mu)) {
        const double xw = (mu - l0) / nu;
        const double yw = (nu - l0) / mu;
        if (positive(xw) && positive(yw)) {
          emit({{j, std::sqrt(xw)}}, {{j, std::sqrt(yw)}}, SepBranch::mixed, j, j, 0, false);
        }
      }
      for (int k = 1; k <= n; ++k) {
        if (k == j || coupled(k)) continue;
        const double nu2 = op_.diag_a(j);
        const double mu2 = op_.diag_b(k);
        if (tiny(nu2) || tiny(mu2)) continue;
        const double xw = (mu2 - l0) / nu2;
        const double yw = (nu2 - l0) / mu2;
        if (positive(xw) && positive(yw)) {
          emit({{j, std::sqrt(xw)}}, {{k, std::sqrt(yw)}}, SepBranch::mixed, j, k, 0, false);
        }
      }
    }

    for (int i = 1; i <= n; ++i) {
      if (!coupled(i)) continue;
      const double a_i = op_.diag_a(i);
      const double b_i = op_.diag_b(i);
      const Complex g_i = op_.coherence(i);
      const double c_i = std::norm(g_i);

      for (int j = i + 1; j <= n; ++j) {
        if (!coupled(j)) continue;
        const double a_j = op_.diag_a(j);
        const double b_j = op_.diag_b(j);
        const Complex g_j = op_.coherence(j);
        const double c_j = std::norm(g_j);
        // (nu - A_i)(mu - B_i) = c_i and (nu - A_j)(mu - B_j) = c_j, eliminated for nu.
        const double db = b_i - b_j;
        const double q2 = db;
        const double q1 = -db * (a_i + a_j) + c_i - c_j;
        const double q0 = db * a_i * a_j - c_i * a_j + c_j * a_i;
        for (double nu : quadratic_roots(q2, q1, q0)) {
          if (tiny(nu - a_i) || tiny(nu - a_j) || tiny(nu)) continue;
          const double mu = b_i + c_i / (nu - a_i);
          if (tiny(mu) || tiny(mu - b_j)) continue;
          const Complex r_i = (nu - a_i) / g_i;
          const Complex r_j = (nu - a_j) / g_j;
          const double ri2 = std::norm(r_i);
          const double rj2 = std::norm(r_j);
          const double xs = (mu - l0) / nu;
          const double ys = (nu - l0) / mu;
          const double det = rj2 - ri2;
          if (std::abs(det) <= 1e-14 * std::max(ri2, rj2)) continue;
          const double wi = (rj2 * xs - ys) / det;
          const double wj = xs - wi;
          if (!positive(wi) || !positive(wj)) continue;
          const double xi = std::sqrt(wi), xj = std::sqrt(wj);
          emit({{i, xi}, {j, xj}}, {{i, r_i * xi}, {j, r_j * xj}}, SepBranch::mixed, i, j, 0,
               false);
        }
      }

      for (int j = 1; j <= n; ++j) {
        if (coupled(j)) continue;
        // Coupled i with x_j free: nu = A_j.
        {
          const double nu = op_.diag_a(j);
          if (!tiny(nu) && !tiny(nu - a_i)) {
            const double mu = b_i + c_i / (nu - a_i);
            if (!tiny(mu)) {
              const Complex r_i = (nu - a_i) / g_i;
              const double wi = ((nu - l0) / mu) / std::norm(r_i);
              const double wj = (mu - l0) / nu - wi;
              if (positive(wi) && positive(wj)) {
                const double xi = std::sqrt(wi);
                emit({{i, xi}, {j, std::sqrt(wj)}}, {{i, r_i * xi}}, SepBranch::mixed, i, j, 0,
                     false);
              }
            }
          }
        }
        // Coupled i with y_j free: mu = B_j.
        {
          const double mu = op_.diag_b(j);
          if (!tiny(mu) && !tiny(mu - b_i)) {
            const double nu = a_i + c_i / (mu - b_i);
            if (!tiny(nu)) {
              const Complex r_i = (nu - a_i) / g_i;
              const double wi = (mu - l0) / nu;
              const double vj = (nu - l0) / mu - wi * std::norm(r_i);
              if (positive(wi) && positive(vj)) {
                const double xi = std::sqrt(wi);
                emit({{i, xi}}, {{i, r_i * xi}, {j, std::sqrt(vj)}}, SepBranch::mixed, i, j, 0,
                     false);
              }
            }
          }
        }
      }
    }
  }

  std::vector<double> quadratic_roots(double q2, double q1, double q0) const {
    std::vector<double> roots;
    const double lin_tol = 1e-14 * scale_ * scale_;
    if (std::abs(q2) <= 1e-14 * scale_) {
      if (std::abs(q1) > lin_tol) roots.push_back(-q0 / q1);
      return roots;
    }
    const double disc = q1 * q1 - 4 * q2 * q0;
    if (disc < 0.0) return roots;
    const double t = -0.5 * (q1 + std::copysign(std::sqrt(disc), q1));
    roots.push_back(t / q2);
    if (t != 0.0) roots.push_back(q0 / t);
    return roots;
  }

  const NoisyNoonOperator& op_;
  int d_;
  double scale_;
  double small_;
  double residual_tol_;
  std::vector<SepSolution> out_;
};

}  // namespace

SepSolutionSet solve_sep_analytic(const NoisyNoonOperator& op) {
  return AnalyticSolver(op).run();
}

}  // namespace noon_ent

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "noon_ent/sep.hpp"
#include "sep_internal.hpp"

namespace noon_ent {

namespace {

// Real parameters x = (Re a, Im a, Re b, Im b). Residuals are the real and
// imaginary parts of L_b a - g a and L_a b - g b with g = <a,b|L|a,b>, plus
// the two norm constraints. Local phases remain gauge directions.
struct SepEquations : Eigen::DenseFunctor<double> {
  explicit SepEquations(const DensePairOperator& op)
      : Eigen::DenseFunctor<double>(4 * op.local_dim(), 4 * op.local_dim() + 2),
        l(op.matrix()),
        d(op.local_dim()) {}

  void unpack(const Eigen::VectorXd& x, Eigen::VectorXcd& a, Eigen::VectorXcd& b) const {
    a.resize(d);
    b.resize(d);
    for (int k = 0; k < d; ++k) {
      a(k) = Complex(x(k), x(d + k));
      b(k) = Complex(x(2 * d + k), x(3 * d + k));
    }
  }

  // F_a(k) = sum_j conj(b_j) (L psi)(k, j), F_b(j) = sum_k conj(a_k) (L psi)(k, j).
  void contract(const Eigen::VectorXcd& lpsi, const Eigen::VectorXcd& a,
                const Eigen::VectorXcd& b, Eigen::VectorXcd& fa, Eigen::VectorXcd& fb) const {
    fa.setZero(d);
    fb.setZero(d);
    for (int k = 0; k < d; ++k) {
      for (int j = 0; j < d; ++j) {
        const Complex v = lpsi(k * d + j);
        fa(k) += std::conj(b(j)) * v;
        fb(j) += std::conj(a(k)) * v;
      }
    }
  }

  static Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    const auto d = a.size();
    Eigen::VectorXcd psi(d * d);
    for (Eigen::Index k = 0; k < d; ++k) psi.segment(k * d, d) = a(k) * b;
    return psi;
  }

  void store(const Eigen::VectorXcd& ra, const Eigen::VectorXcd& rb, double na, double nb,
             Eigen::Ref<Eigen::VectorXd> f) const {
    for (int k = 0; k < d; ++k) {
      f(k) = ra(k).real();
      f(d + k) = ra(k).imag();
      f(2 * d + k) = rb(k).real();
      f(3 * d + k) = rb(k).imag();
    }
    f(4 * d) = na;
    f(4 * d + 1) = nb;
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    Eigen::VectorXcd a, b, fa, fb;
    unpack(x, a, b);
    const Eigen::VectorXcd psi = kron(a, b);
    const Eigen::VectorXcd lpsi = l * psi;
    const double g = psi.dot(lpsi).real();
    contract(lpsi, a, b, fa, fb);
    store(fa - g * a, fb - g * b, a.squaredNorm() - 1.0, b.squaredNorm() - 1.0, f);
    return 0;
  }

  // Directional derivatives. Perturbing a_k by u gives L dpsi = u c_k with
  // c_k = L (e_k (x) b); perturbing b_k by u gives u e_k' with e_k' = L (a (x) e_k).
  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const {
    Eigen::VectorXcd a, b, fa, fb, pa, pb;
    unpack(x, a, b);
    const Eigen::VectorXcd psi = kron(a, b);
    const Eigen::VectorXcd lpsi = l * psi;
    const double g = psi.dot(lpsi).real();
    contract(lpsi, a, b, fa, fb);

    Eigen::VectorXcd ra(d), rb(d), col_vec(d * d);
    for (int side = 0; side < 2; ++side) {
      for (int k = 0; k < d; ++k) {
        if (side == 0) {
          col_vec = l.middleCols(k * d, d) * b;
        } else {
          col_vec.setZero();
          for (int m = 0; m < d; ++m) col_vec += a(m) * l.col(m * d + k);
        }
        contract(col_vec, a, b, pa, pb);
        const Complex s = psi.dot(col_vec);
        for (int part = 0; part < 2; ++part) {
          const Complex u = part == 0 ? Complex{1.0} : Complex{0.0, 1.0};
          const double dg = 2.0 * (u * s).real();
          ra = u * pa - dg * a;
          rb = u * pb - dg * b;
          double dna = 0.0, dnb = 0.0;
          if (side == 0) {
            for (int j = 0; j < d; ++j) rb(j) += std::conj(u) * lpsi(k * d + j);
            ra(k) -= g * u;
            dna = 2.0 * (std::conj(a(k)) * u).real();
          } else {
            for (int m = 0; m < d; ++m) ra(m) += std::conj(u) * lpsi(m * d + k);
            rb(k) -= g * u;
            dnb = 2.0 * (std::conj(b(k)) * u).real();
          }
          store(ra, rb, dna, dnb, jac.col((2 * side + part) * d + k));
        }
      }
    }
    return 0;
  }

  const Eigen::MatrixXcd& l;
  int d;
};

using Solver = Eigen::LevenbergMarquardt<SepEquations>;

struct Seed {
  Eigen::VectorXcd a;
  Eigen::VectorXcd b;
  bool seesaw = false;
};

Eigen::VectorXcd random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n01;
  Eigen::VectorXcd v(d);
  for (int k = 0; k < d; ++k) v(k) = Complex(n01(rng), n01(rng));
  return v / v.norm();
}

std::vector<Eigen::VectorXcd> structured_local_vectors(int d) {
  std::vector<Eigen::VectorXcd> out;
  for (int j = 0; j < d; ++j) out.push_back(fock_vector(d, j));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      for (int p = 0; p < 4; ++p) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
        v(j) = 1.0 / std::numbers::sqrt2;
        v(k) = std::polar(1.0 / std::numbers::sqrt2, p * std::numbers::pi / 2);
        out.push_back(v);
      }
    }
  }
  return out;
}

// Eigenvector of h with the largest overlap to the previous vector.
Eigen::VectorXcd follow_branch(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& previous) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::Index best = 0;
  double best_overlap = -1.0;
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    const double ov = std::norm(es.eigenvectors().col(k).dot(previous));
    if (ov > best_overlap + 1e-12) {
      best_overlap = ov;
      best = k;
    }
  }
  return es.eigenvectors().col(best);
}

// Normalized mean of u and v after rotating v onto the phase of u.
Eigen::VectorXcd aligned_mean(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  const Complex overlap = v.dot(u);
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0};
  const Eigen::VectorXcd m = u + v * phase;
  return m.norm() > 1e-12 ? Eigen::VectorXcd(m.normalized()) : u;
}

class NumericSolver {
 public:
  NumericSolver(const DensePairOperator& op, const NumericSepOptions& opt)
      : op_(op),
        opt_(opt),
        d_(op.local_dim()),
        scale_(op.matrix().cwiseAbs().maxCoeff()),
        target_(std::max(opt.tol, 64.0 * std::numeric_limits<double>::epsilon() * scale_)) {}

  SepSolutionSet run() {
    if (opt_.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (opt_.max_iter < 0) throw std::invalid_argument("max_iter must be >= 0");
    if (opt_.polish_evals < 1) throw std::invalid_argument("polish_evals must be >= 1");
    const auto seeds = make_seeds();
    std::vector<std::vector<SepSolution>> found(seeds.size());
    std::vector<int> attempts(seeds.size(), 0);

    int threads = opt_.threads;
    if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<int>(threads, static_cast<int>(seeds.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k; (k = next.fetch_add(1)) < seeds.size();) {
        attempts[k] = process(seeds[k], found[k]);
      }
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SepSolutionSet set;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      set.attempts += attempts[k];
      set.converged += static_cast<int>(found[k].size());
      for (auto& s : found[k]) set.solutions.push_back(std::move(s));
    }
    detail::finalize(set);
    if (set.solutions.empty()) {
      throw NoConvergence("no restart of the numeric separability solver converged",
                          std::move(set));
    }
    return set;
  }

 private:
  std::vector<Seed> make_seeds() const {
    std::vector<Seed> seeds;
    if (opt_.structured_seeds) {
      const auto local = structured_local_vectors(d_);
      for (const auto& a : local) {
        for (const auto& b : local) seeds.push_back({a, b, false});
      }
    }
    for (int r = 0; r < opt_.restarts; ++r) {
      std::mt19937_64 rng(opt_.seed + static_cast<std::uint64_t>(r));
      Eigen::VectorXcd a = random_unit(rng, d_);
      Eigen::VectorXcd b = random_unit(rng, d_);
      seeds.push_back({a, b, true});
    }
    return seeds;
  }

  // Returns the number of attempts; accepted fixed points go to out.
  int process(const Seed& seed, std::vector<SepSolution>& out) const {
    int attempts = 1;
    polish(seed.a, seed.b, out);
    if (!seed.seesaw) return attempts;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduced_on_b(op_, seed.a));
    for (int branch = 0; branch < d_; ++branch) {
      ++attempts;
      Eigen::VectorXcd a = seed.a;
      Eigen::VectorXcd b = es.eigenvectors().col(branch);
      seesaw(a, b);
      polish(a, b, out);
    }
    return attempts;
  }

  void seesaw(Eigen::VectorXcd& a, Eigen::VectorXcd& b) const {
    Eigen::VectorXcd prev_a = a, prev_b = b;
    for (int it = 0; it < opt_.max_iter; ++it) {
      Eigen::VectorXcd na = follow_branch(reduced_on_a(op_, b), a);
      Eigen::VectorXcd nb = follow_branch(reduced_on_b(op_, na), b);
      // Period-two oscillation between branches: damp by averaging.
      if (it > 1 && std::norm(na.dot(prev_a)) > 1.0 - 1e-12 &&
          std::norm(na.dot(a)) < 1.0 - 1e-6) {
        na = aligned_mean(na, a);
        nb = aligned_mean(nb, b);
      }
      prev_a = a;
      prev_b = b;
      const double change = std::max(1.0 - std::norm(na.dot(a)), 1.0 - std::norm(nb.dot(b)));
      a = na;
      b = nb;
      if (std::abs(change) < 1e-14 &&
          sep_residual(op_, ProductVector(a, b), expectation(op_, ProductVector(a, b))) <=
              target_) {
        break;
      }
    }
  }

  void polish(const Eigen::VectorXcd& a0, const Eigen::VectorXcd& b0,
              std::vector<SepSolution>& out) const {
    SepEquations eq(op_);
    Eigen::VectorXd x(4 * d_);
    for (int k = 0; k < d_; ++k) {
      x(k) = a0(k).real();
      x(d_ + k) = a0(k).imag();
      x(2 * d_ + k) = b0(k).real();
      x(3 * d_ + k) = b0(k).imag();
    }
    if (accept(eq, x, out)) return;
    Solver lm(eq);
    lm.setXtol(1e-15);
    lm.setFtol(1e-30);
    lm.setGtol(0.0);
    lm.setMaxfev(opt_.polish_evals);
    lm.minimize(x);
    if (accept(eq, x, out)) return;
    // Close to a fixed point but short of the target: allow a longer polish.
    if (residual(eq, x) <= 1e3 * target_) {
      lm.setMaxfev(10 * opt_.polish_evals);
      lm.minimize(x);
      accept(eq, x, out);
    }
  }

  double residual(const SepEquations& eq, const Eigen::VectorXd& x) const {
    Eigen::VectorXcd a, b;
    eq.unpack(x, a, b);
    if (!(a.norm() > 0.5) || !(b.norm() > 0.5)) return std::numeric_limits<double>::infinity();
    const auto v = ProductVector::normalized(a, b);
    return sep_residual(op_, v, expectation(op_, v));
  }

  bool accept(const SepEquations& eq, const Eigen::VectorXd& x,
              std::vector<SepSolution>& out) const {
    Eigen::VectorXcd a, b;
    eq.unpack(x, a, b);
    if (!(a.norm() > 0.5) || !(b.norm() > 0.5)) return false;
    ProductVector v = detail::canonical_phase(ProductVector::normalized(a, b));
    const double g = expectation(op_, v);
    const double res = sep_residual(op_, v, g);
    if (!(res <= target_)) return false;
    out.push_back(SepSolution{g, std::move(v), SepBranch::numeric, 0, 0, -1, res});
    return true;
  }

  const DensePairOperator& op_;
  NumericSepOptions opt_;
  int d_;
  double scale_;
  double target_;
};

}  // namespace

SepSolutionSet solve_sep_numeric(const DensePairOperator& op, const NumericSepOptions& options) {
  return NumericSolver(op, options).run();
}

SepSolutionSet solve_sep_numeric(const DensePairOperator& op, int restarts, int max_iter,
                                 double tol) {
  NumericSepOptions options;
  options.restarts = restarts;
  options.max_iter = max_iter;
  options.tol = tol;
  return solve_sep_numeric(op, options);
}

}  // namespace noon_ent

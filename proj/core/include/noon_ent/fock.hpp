#pragma once

// Truncated two-mode Fock-space objects: the sparse noisy-N00N operator
// family, normalized product vectors, and the dense oracle representation.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace noon_ent {

using Complex = std::complex<double>;

inline constexpr double kStateTraceTol = 1e-12;
inline constexpr double kBlockPositivityTol = 1e-12;
inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;

// Hermitian operator of the form
//   L0 |0,0><0,0| + sum_i [ A_i |i,0><i,0| + B_i |0,i><0,i| ]
//                 + sum_i [ c_i |i,0><0,i| + conj(c_i) |0,i><i,0| ].
// Only the upper coherence is stored. Fock indices are 1-based.
class NoisyNoonOperator {
 public:
  int n_max() const noexcept { return static_cast<int>(diag_a_.size()); }
  int local_dim() const noexcept { return n_max() + 1; }

  double vacuum() const noexcept { return l0_; }
  // Coefficients for i > n_max() are zero.
  double diag_a(int i) const;
  double diag_b(int i) const;
  Complex coherence(int i) const;

  std::span<const double> diag_a() const noexcept { return diag_a_; }
  std::span<const double> diag_b() const noexcept { return diag_b_; }
  std::span<const Complex> coherences() const noexcept { return coh_; }

  bool is_state() const noexcept { return state_; }
  double trace() const noexcept;
  // Largest coefficient magnitude; used to scale tolerances.
  double scale() const noexcept;
  // True when any of A_i, B_i, c_i is nonzero.
  bool index_active(int i) const;

 private:
  friend NoisyNoonOperator make_noisy_noon(double, std::span<const double>,
                                           std::span<const double>,
                                           std::span<const Complex>, bool);
  NoisyNoonOperator(double l0, std::vector<double> a, std::vector<double> b,
                    std::vector<Complex> coh, bool state);

  double l0_ = 0.0;
  std::vector<double> diag_a_;
  std::vector<double> diag_b_;
  std::vector<Complex> coh_;
  bool state_ = false;
};

// Validating constructor. Sequences are indexed i = 1..n and must have equal
// length >= 1; trailing indices with all-zero coefficients are dropped (n_max
// stays >= 1). With as_state the trace, sign and 2x2 block-positivity
// conditions are enforced (TraceError / PositivityError).
NoisyNoonOperator make_noisy_noon(double l0, std::span<const double> diag_a,
                                  std::span<const double> diag_b,
                                  std::span<const Complex> coh, bool as_state);

// (|N,0> + |0,N>)/sqrt(2) as a density operator.
NoisyNoonOperator pure_noon_state(int photons);

// Smallest eigenvalue of the operator, from its vacuum entry and 2x2 blocks.
double min_block_eigenvalue(const NoisyNoonOperator& op);

Eigen::VectorXcd fock_vector(int dim, int k);

// |a> (x) |b> with unit-norm factors of equal dimension.
class ProductVector {
 public:
  ProductVector(Eigen::VectorXcd a, Eigen::VectorXcd b);

  static ProductVector normalized(Eigen::VectorXcd a, Eigen::VectorXcd b);
  static ProductVector fock(int dim, int i, int j);

  const Eigen::VectorXcd& a() const noexcept { return a_; }
  const Eigen::VectorXcd& b() const noexcept { return b_; }
  int dim() const noexcept { return static_cast<int>(a_.size()); }

  // Joint amplitude vector, index i * dim + j.
  Eigen::VectorXcd joint() const;
  Eigen::MatrixXcd projector() const;

 private:
  Eigen::VectorXcd a_;
  Eigen::VectorXcd b_;
};

// |<a|a'>|^2 |<b|b'>|^2
double transition_probability(const ProductVector& u, const ProductVector& v);

// Dense Hermitian operator on C^d (x) C^d, row index i * d + j for |i,j>.
class DensePairOperator {
 public:
  DensePairOperator(int local_dim, Eigen::MatrixXcd entries);

  int local_dim() const noexcept { return local_dim_; }
  int dim() const noexcept { return local_dim_ * local_dim_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  // <i,j| L |k,l>
  Complex element(int i, int j, int k, int l) const {
    return m_(i * local_dim_ + j, k * local_dim_ + l);
  }

  double trace() const;
  Eigen::VectorXd eigenvalues() const;
  double min_eigenvalue() const;
  // Throws TraceError / PositivityError unless the operator is a state.
  void require_state(double trace_tol = kStateTraceTol,
                     double eig_tol = 1e-10) const;

 private:
  int local_dim_;
  Eigen::MatrixXcd m_;
};

DensePairOperator to_dense(const NoisyNoonOperator& op);
// Embeds into a larger truncation; local_dim must be >= op.local_dim().
DensePairOperator to_dense(const NoisyNoonOperator& op, int local_dim);

// <a,b| L |a,b>. The sparse overload accepts vectors of any dimension >=
// op.local_dim(); the dense one requires equal dimensions.
double expectation(const NoisyNoonOperator& op, const ProductVector& v);
double expectation(const DensePairOperator& op, const ProductVector& v);

// tr(L rho) evaluated on the sparse forms.
double trace_product(const NoisyNoonOperator& lhs, const NoisyNoonOperator& rhs);

}  // namespace noon_ent

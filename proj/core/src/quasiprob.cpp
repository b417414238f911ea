#include "noon_ent/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/QR>

namespace noon_ent {

namespace {

std::string fock_label(int i, int j) {
  std::ostringstream s;
  s << '|' << i << ',' << j << '>';
  return s.str();
}

std::string family_label(int n, int m, int index) {
  std::ostringstream s;
  s << "|s" << n << ",s" << m << ">[" << index << ']';
  return s.str();
}

Eigen::VectorXcd superposition(int dim, int index, Complex phase) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = 1.0 / std::numbers::sqrt2;
  v(index) = phase / std::numbers::sqrt2;
  return v;
}

}  // namespace

std::vector<LabeledProduct> build_basis(const NoisyNoonOperator& state,
                                        const BasisOptions& options) {
  const int d = state.local_dim();
  std::vector<LabeledProduct> basis;
  basis.push_back({ProductVector::fock(d, 0, 0), fock_label(0, 0), false});

  auto forced = [&](int i) {
    return std::find(options.coherent_indices.begin(), options.coherent_indices.end(), i) !=
           options.coherent_indices.end();
  };
  for (int i : options.coherent_indices) {
    if (i < 1 || i > state.n_max()) throw IndexOutOfRange("forced coherence index outside state");
  }

  std::vector<int> diagonal_only;
  for (int i = 1; i <= state.n_max(); ++i) {
    const Complex c = state.coherence(i);
    if (c == Complex{} && !forced(i)) {
      if (state.diag_a(i) != 0.0 || state.diag_b(i) != 0.0) diagonal_only.push_back(i);
      continue;
    }
    const Complex offset = c == Complex{} ? Complex{1.0} : std::conj(c) / std::abs(c);
    basis.push_back({ProductVector::fock(d, i, i), fock_label(i, i), false});
    basis.push_back({ProductVector::fock(d, 0, i), fock_label(0, i), false});
    basis.push_back({ProductVector::fock(d, i, 0), fock_label(i, 0), false});
    for (int shift : {0, 2}) {
      for (int n = 0; n < 4; ++n) {
        const Complex ia = std::polar(1.0, n * std::numbers::pi / 2);
        const Complex ib = std::polar(1.0, (n + shift) * std::numbers::pi / 2) * offset;
        basis.push_back({ProductVector(superposition(d, i, ia), superposition(d, i, ib)),
                         family_label(n, (n + shift) % 4, i), true});
      }
    }
  }
  for (int j : diagonal_only) {
    basis.push_back({ProductVector::fock(d, j, 0), fock_label(j, 0), false});
    basis.push_back({ProductVector::fock(d, 0, j), fock_label(0, j), false});
  }
  return basis;
}

Eigen::MatrixXd gram_matrix(const std::vector<ProductVector>& basis) {
  if (basis.empty()) throw std::invalid_argument("basis must not be empty");
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    g(k, k) = 1.0;
    for (Eigen::Index l = k + 1; l < n; ++l) {
      g(k, l) = g(l, k) = transition_probability(basis[k], basis[l]);
    }
  }
  return g;
}

QuasiProbability solve_quasiprob(const NoisyNoonOperator& state, const BasisOptions& options) {
  QuasiProbability q;
  q.basis = build_basis(state, options);
  const auto n = static_cast<Eigen::Index>(q.basis.size());

  std::vector<ProductVector> vecs;
  vecs.reserve(q.basis.size());
  for (const auto& b : q.basis) vecs.push_back(b.vec);
  const Eigen::MatrixXd gram = gram_matrix(vecs);

  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) rhs(k) = expectation(state, vecs[k]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double cutoff = kGramNullTol * lam.maxCoeff();
  std::vector<Eigen::Index> range, null;
  for (Eigen::Index k = 0; k < n; ++k) (lam(k) > cutoff ? range : null).push_back(k);
  q.gram_rank = static_cast<int>(range.size());

  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k : range) {
    const auto v = es.eigenvectors().col(k);
    p += v * (v.dot(rhs) / lam(k));
  }

  // Null-space shift c = -pinv(Z_S) p_S over the superposition rows S.
  std::vector<Eigen::Index> rows;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (q.basis[k].superposition) rows.push_back(k);
  }
  if (!null.empty() && !rows.empty()) {
    Eigen::MatrixXd z(n, static_cast<Eigen::Index>(null.size()));
    for (std::size_t c = 0; c < null.size(); ++c) z.col(c) = es.eigenvectors().col(null[c]);
    Eigen::MatrixXd zs(static_cast<Eigen::Index>(rows.size()), z.cols());
    Eigen::VectorXd ps(zs.rows());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      zs.row(r) = z.row(rows[r]);
      ps(r) = p(rows[r]);
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(zs);
    cod.setThreshold(1e-10);
    const Eigen::VectorXd c = -cod.solve(ps);
    p += z * c;
  }

  q.weights.assign(p.data(), p.data() + n);
  q.min_weight = p.minCoeff();
  q.reconstruction_residual =
      (to_dense(state).matrix() - reconstruct(q).matrix()).norm();
  if (!(q.reconstruction_residual <= kReconstructionTol)) {
    std::ostringstream msg;
    msg << "quasiprobability reconstruction residual " << q.reconstruction_residual
        << " exceeds " << kReconstructionTol;
    throw ReconstructionFailure(msg.str(), std::move(q));
  }
  return q;
}

double negativity(const QuasiProbability& q) { return std::min(0.0, q.min_weight); }

DensePairOperator reconstruct(const QuasiProbability& q) {
  if (q.basis.empty()) throw std::invalid_argument("empty quasiprobability");
  const int d = q.basis.front().vec.dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (std::size_t k = 0; k < q.basis.size(); ++k) {
    const Eigen::VectorXcd psi = q.basis[k].vec.joint();
    m.noalias() += q.weights[k] * (psi * psi.adjoint());
  }
  m = 0.5 * (m + m.adjoint()).eval();
  return DensePairOperator(d, std::move(m));
}

}  // namespace noon_ent

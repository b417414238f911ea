#include "noon_ent/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "noon_ent/errors.hpp"

namespace noon_ent {

NoisyNoonOperator::NoisyNoonOperator(double l0, std::vector<double> a,
                                     std::vector<double> b,
                                     std::vector<Complex> coh, bool state)
    : l0_(l0),
      diag_a_(std::move(a)),
      diag_b_(std::move(b)),
      coh_(std::move(coh)),
      state_(state) {}

double NoisyNoonOperator::diag_a(int i) const {
  if (i < 1) throw IndexOutOfRange("Fock index must be >= 1");
  return i <= n_max() ? diag_a_[i - 1] : 0.0;
}

double NoisyNoonOperator::diag_b(int i) const {
  if (i < 1) throw IndexOutOfRange("Fock index must be >= 1");
  return i <= n_max() ? diag_b_[i - 1] : 0.0;
}

Complex NoisyNoonOperator::coherence(int i) const {
  if (i < 1) throw IndexOutOfRange("Fock index must be >= 1");
  return i <= n_max() ? coh_[i - 1] : Complex{};
}

double NoisyNoonOperator::trace() const noexcept {
  double t = l0_;
  for (int i = 0; i < n_max(); ++i) t += diag_a_[i] + diag_b_[i];
  return t;
}

double NoisyNoonOperator::scale() const noexcept {
  double s = std::abs(l0_);
  for (int i = 0; i < n_max(); ++i) {
    s = std::max({s, std::abs(diag_a_[i]), std::abs(diag_b_[i]),
                  std::abs(coh_[i])});
  }
  return s;
}

bool NoisyNoonOperator::index_active(int i) const {
  return diag_a(i) != 0.0 || diag_b(i) != 0.0 || coherence(i) != Complex{};
}

NoisyNoonOperator make_noisy_noon(double l0, std::span<const double> diag_a,
                                  std::span<const double> diag_b,
                                  std::span<const Complex> coh, bool as_state) {
  if (diag_a.size() != diag_b.size() || diag_a.size() != coh.size()) {
    throw LengthMismatch("diagonal and coherence sequences differ in length");
  }
  if (diag_a.empty()) throw LengthMismatch("at least one Fock index is required");

  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(l0)) throw std::invalid_argument("non-finite coefficient");
  for (std::size_t k = 0; k < diag_a.size(); ++k) {
    if (!finite(diag_a[k]) || !finite(diag_b[k]) || !finite(coh[k].real()) ||
        !finite(coh[k].imag())) {
      throw std::invalid_argument("non-finite coefficient");
    }
  }

  std::size_t n = diag_a.size();
  while (n > 1 && diag_a[n - 1] == 0.0 && diag_b[n - 1] == 0.0 &&
         coh[n - 1] == Complex{}) {
    --n;
  }
  std::vector<double> a(diag_a.begin(), diag_a.begin() + n);
  std::vector<double> b(diag_b.begin(), diag_b.begin() + n);
  std::vector<Complex> c(coh.begin(), coh.begin() + n);

  if (as_state) {
    double tr = l0;
    for (std::size_t k = 0; k < n; ++k) tr += a[k] + b[k];
    if (std::abs(tr - 1.0) > kStateTraceTol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "state trace is " << tr << ", expected 1";
      throw TraceError(msg.str());
    }
    if (l0 < -kBlockPositivityTol) throw PositivityError("negative vacuum population");
    for (std::size_t k = 0; k < n; ++k) {
      if (a[k] < -kBlockPositivityTol || b[k] < -kBlockPositivityTol) {
        std::ostringstream msg;
        msg << "negative population at Fock index " << k + 1;
        throw PositivityError(msg.str());
      }
      if (std::norm(c[k]) > a[k] * b[k] + kBlockPositivityTol) {
        std::ostringstream msg;
        msg << "coherence at Fock index " << k + 1
            << " violates |c|^2 <= A*B";
        throw PositivityError(msg.str());
      }
    }
  }
  return NoisyNoonOperator(l0, std::move(a), std::move(b), std::move(c), as_state);
}

NoisyNoonOperator pure_noon_state(int photons) {
  if (photons < 1) throw std::invalid_argument("photon number must be >= 1");
  std::vector<double> a(photons, 0.0), b(photons, 0.0);
  std::vector<Complex> c(photons, Complex{});
  a.back() = b.back() = 0.5;
  c.back() = 0.5;
  return make_noisy_noon(0.0, a, b, c, true);
}

double min_block_eigenvalue(const NoisyNoonOperator& op) {
  double lo = op.vacuum();
  for (int i = 1; i <= op.n_max(); ++i) {
    const double a = op.diag_a(i);
    const double b = op.diag_b(i);
    const double mean = 0.5 * (a + b);
    const double radius = std::hypot(0.5 * (a - b), std::abs(op.coherence(i)));
    lo = std::min(lo, mean - radius);
  }
  // Fock products |i,j> with i, j >= 1 carry eigenvalue zero.
  if (op.local_dim() > 1) lo = std::min(lo, 0.0);
  return lo;
}

Eigen::VectorXcd fock_vector(int dim, int k) {
  if (k < 0 || k >= dim) throw IndexOutOfRange("Fock index outside truncation");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(k) = 1.0;
  return v;
}

ProductVector::ProductVector(Eigen::VectorXcd a, Eigen::VectorXcd b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size() || a_.size() == 0) {
    throw DimensionMismatch("product factors must have equal, nonzero dimension");
  }
  if (std::abs(a_.norm() - 1.0) > kUnitNormTol ||
      std::abs(b_.norm() - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("product factors must have unit norm");
  }
}

ProductVector ProductVector::normalized(Eigen::VectorXcd a, Eigen::VectorXcd b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("zero product factor");
  return ProductVector(a / na, b / nb);
}

ProductVector ProductVector::fock(int dim, int i, int j) {
  return ProductVector(fock_vector(dim, i), fock_vector(dim, j));
}

Eigen::VectorXcd ProductVector::joint() const {
  const int d = dim();
  Eigen::VectorXcd v(d * d);
  for (int i = 0; i < d; ++i) v.segment(i * d, d) = a_(i) * b_;
  return v;
}

Eigen::MatrixXcd ProductVector::projector() const {
  const Eigen::VectorXcd v = joint();
  return v * v.adjoint();
}

double transition_probability(const ProductVector& u, const ProductVector& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("product vectors differ in dimension");
  return std::norm(u.a().dot(v.a())) * std::norm(u.b().dot(v.b()));
}

DensePairOperator::DensePairOperator(int local_dim, Eigen::MatrixXcd entries)
    : local_dim_(local_dim), m_(std::move(entries)) {
  if (local_dim_ < 1 || m_.rows() != local_dim_ * local_dim_ ||
      m_.cols() != m_.rows()) {
    throw DimensionMismatch("dense operator must be d^2 x d^2");
  }
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale) {
    throw std::invalid_argument("dense operator is not Hermitian");
  }
}

double DensePairOperator::trace() const { return m_.trace().real(); }

Eigen::VectorXd DensePairOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double DensePairOperator::min_eigenvalue() const { return eigenvalues().minCoeff(); }

void DensePairOperator::require_state(double trace_tol, double eig_tol) const {
  if (std::abs(trace() - 1.0) > trace_tol) throw TraceError("dense state trace is not 1");
  if (min_eigenvalue() < -eig_tol) throw PositivityError("dense state has a negative eigenvalue");
}

DensePairOperator to_dense(const NoisyNoonOperator& op) {
  return to_dense(op, op.local_dim());
}

DensePairOperator to_dense(const NoisyNoonOperator& op, int local_dim) {
  if (local_dim < op.local_dim()) {
    throw DimensionMismatch("target truncation smaller than operator support");
  }
  const int d = local_dim;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  m(0, 0) = op.vacuum();
  for (int i = 1; i <= op.n_max(); ++i) {
    const int ia = i * d;  // |i,0>
    const int ib = i;      // |0,i>
    m(ia, ia) = op.diag_a(i);
    m(ib, ib) = op.diag_b(i);
    m(ia, ib) = op.coherence(i);
    m(ib, ia) = std::conj(op.coherence(i));
  }
  return DensePairOperator(d, std::move(m));
}

double expectation(const NoisyNoonOperator& op, const ProductVector& v) {
  if (v.dim() < op.local_dim()) {
    throw DimensionMismatch("product vector shorter than operator truncation");
  }
  const auto& a = v.a();
  const auto& b = v.b();
  const double a0 = std::norm(a(0));
  const double b0 = std::norm(b(0));
  double value = op.vacuum() * a0 * b0;
  for (int i = 1; i <= op.n_max(); ++i) {
    value += op.diag_a(i) * std::norm(a(i)) * b0;
    value += op.diag_b(i) * a0 * std::norm(b(i));
    // c <a,b|i,0><0,i|a,b> + c.c.
    const Complex cross = std::conj(a(i) * b(0)) * a(0) * b(i);
    value += 2.0 * (op.coherence(i) * cross).real();
  }
  return value;
}

double expectation(const DensePairOperator& op, const ProductVector& v) {
  if (v.dim() != op.local_dim()) {
    throw DimensionMismatch("product vector and operator differ in dimension");
  }
  const Eigen::VectorXcd psi = v.joint();
  const Complex value = psi.dot(op.matrix() * psi);
  const double scale = std::max(1.0, op.matrix().cwiseAbs().maxCoeff());
  if (std::abs(value.imag()) > 1e-12 * scale) {
    throw std::logic_error("expectation of Hermitian operator has imaginary part");
  }
  return value.real();
}

double trace_product(const NoisyNoonOperator& lhs, const NoisyNoonOperator& rhs) {
  double t = lhs.vacuum() * rhs.vacuum();
  const int n = std::min(lhs.n_max(), rhs.n_max());
  for (int i = 1; i <= n; ++i) {
    t += lhs.diag_a(i) * rhs.diag_a(i) + lhs.diag_b(i) * rhs.diag_b(i);
    t += 2.0 * (lhs.coherence(i) * std::conj(rhs.coherence(i))).real();
  }
  return t;
}

}  // namespace noon_ent

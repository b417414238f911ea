#include "noon_ent/multipartite.hpp"

#include <cmath>
#include <stdexcept>

#include "noon_ent/errors.hpp"

namespace noon_ent {

MultiModeState::MultiModeState(int modes, int photons, Eigen::MatrixXcd compact)
    : modes_(modes), photons_(photons), rho_(std::move(compact)) {
  if (modes_ != 2 && modes_ != 3) throw UnsupportedModeCount("only 2 or 3 modes are supported");
  if (photons_ < 1) throw std::invalid_argument("photon number must be >= 1");
  if (rho_.rows() != modes_ || rho_.cols() != modes_) {
    throw DimensionMismatch("compact state must be modes x modes");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("multimode state is not Hermitian");
  }
  if (std::abs(rho_.trace().real() - 1.0) > kStateTraceTol) {
    throw TraceError("multimode state trace is not 1");
  }
}

Eigen::MatrixXcd MultiModeState::expand() const {
  const int base = photons_ + 1;
  int dim = 1;
  for (int m = 0; m < modes_; ++m) dim *= base;
  auto index = [&](int mode) {
    int idx = photons_;
    for (int m = mode + 1; m < modes_; ++m) idx *= base;
    return idx;
  };
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (int m = 0; m < modes_; ++m) {
    for (int k = 0; k < modes_; ++k) full(index(m), index(k)) = rho_(m, k);
  }
  return full;
}

MultiModeState w_state(int photons, int modes) {
  if (modes != 2 && modes != 3) throw UnsupportedModeCount("only 2 or 3 modes are supported");
  return MultiModeState(modes, photons,
                        Eigen::MatrixXcd::Constant(modes, modes, Complex{1.0 / modes}));
}

MultiModeState dephase_one_mode(const MultiModeState& state, double delta, int mode) {
  if (!(delta >= 0.0)) throw std::invalid_argument("dephasing width must be >= 0");
  const double x = delta * state.photons();
  return dephase_one_mode_by(state, std::exp(-0.5 * x * x), mode);
}

MultiModeState dephase_one_mode_by(const MultiModeState& state, double lambda, int mode) {
  const int d = state.modes();
  if (mode < 0) mode = d - 1;
  if (mode >= d) throw IndexOutOfRange("mode index outside state");
  Eigen::MatrixXcd rho = state.compact();
  for (int k = 0; k < d; ++k) {
    if (k == mode) continue;
    rho(mode, k) *= lambda;
    rho(k, mode) *= lambda;
  }
  return MultiModeState(d, state.photons(), std::move(rho));
}

double w_overlap(const MultiModeState& state) {
  return state.compact().sum().real() / state.modes();
}

WitnessReport tripartite_witness(const MultiModeState& state, SeparabilityKind kind) {
  if (state.modes() != 3) throw UnsupportedModeCount("tripartite witness needs three modes");
  const double bound =
      kind == SeparabilityKind::full ? kFullSeparableBound : kPartialSeparableBound;
  return make_witness_report(bound, w_overlap(state));
}

NoisyNoonOperator to_noisy_noon(const MultiModeState& state) {
  if (state.modes() != 2) throw UnsupportedModeCount("conversion needs two modes");
  const int n = state.photons();
  const auto& rho = state.compact();
  std::vector<double> a(n, 0.0), b(n, 0.0);
  std::vector<Complex> c(n, Complex{});
  a.back() = rho(0, 0).real();
  b.back() = rho(1, 1).real();
  c.back() = rho(0, 1);
  return make_noisy_noon(0.0, a, b, c, true);
}

}  // namespace noon_ent

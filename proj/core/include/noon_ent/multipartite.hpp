#pragma once

// Multimode N00N (generalized W) states with N photons shared coherently
// among d modes, stored on the span of |N in mode m, vacuum elsewhere>.

#include "noon_ent/fock.hpp"
#include "noon_ent/witness.hpp"

namespace noon_ent {

class MultiModeState {
 public:
  // rho_{mm'} = <m|rho|m'> with |m> = N photons in mode m. Throws on a
  // non-Hermitian matrix or a trace differing from one.
  MultiModeState(int modes, int photons, Eigen::MatrixXcd compact);

  int modes() const noexcept { return modes_; }
  int photons() const noexcept { return photons_; }
  const Eigen::MatrixXcd& compact() const noexcept { return rho_; }

  // Full matrix on (N+1)^d, index sum_m n_m (N+1)^(d-1-m).
  Eigen::MatrixXcd expand() const;

 private:
  int modes_;
  int photons_;
  Eigen::MatrixXcd rho_;
};

// (1/sqrt(d)) sum_m |m> as a density operator; d must be 2 or 3.
MultiModeState w_state(int photons, int modes);

// Gaussian dephasing of width delta on one mode (default: the last one):
// coherences with that mode are multiplied by exp(-delta^2 N^2 / 2).
MultiModeState dephase_one_mode(const MultiModeState& state, double delta, int mode = -1);
MultiModeState dephase_one_mode_by(const MultiModeState& state, double lambda, int mode = -1);

// <psi_{N,d}|rho|psi_{N,d}>
double w_overlap(const MultiModeState& state);

enum class SeparabilityKind { full, partial };

// Bounds on the W-state fidelity of three-mode separable states, quoted from
// the multipartite separability eigenvalue literature rather than derived here.
inline constexpr double kFullSeparableBound = 2.0 / 3.0;
inline constexpr double kPartialSeparableBound = 4.0 / 9.0;

// f_kind - <psi_{N,3}|rho|psi_{N,3}>; requires three modes.
WitnessReport tripartite_witness(const MultiModeState& state, SeparabilityKind kind);

// Two-mode state as the equivalent noisy-N00N state.
NoisyNoonOperator to_noisy_noon(const MultiModeState& state);

}  // namespace noon_ent

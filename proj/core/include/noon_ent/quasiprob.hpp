#pragma once

// Entanglement quasiprobabilities: rho = sum_k p_k |a_k,b_k><a_k,b_k| over
// separability eigenvectors, with real and possibly negative weights p_k.

#include <string>
#include <vector>

#include "noon_ent/errors.hpp"
#include "noon_ent/fock.hpp"

namespace noon_ent {

struct LabeledProduct {
  ProductVector vec;
  std::string label;
  // Member of a |s_n,s_m> superposition family.
  bool superposition = false;
};

struct BasisOptions {
  // Fock indices that receive the superposition families even when their
  // coherence vanishes (their phase reference is then zero).
  std::vector<int> coherent_indices;
};

// |0,0>; for each index i with nonzero (or forced) coherence: |i,i>, |0,i>,
// |i,0>, |s_n,s_n> and |s_n,s_{n+2}> for n = 0..3 with
// s_n = (|0> + i^n |i>)/sqrt(2) on mode a and the mode-b phase shifted by
// -arg(c_i); then |j,0>, |0,j> for the remaining populated indices j.
std::vector<LabeledProduct> build_basis(const NoisyNoonOperator& state,
                                        const BasisOptions& options = {});

// G_kl = |<a_k|a_l>|^2 |<b_k|b_l>|^2
Eigen::MatrixXd gram_matrix(const std::vector<ProductVector>& basis);

struct QuasiProbability {
  std::vector<LabeledProduct> basis;
  std::vector<double> weights;
  int gram_rank = 0;
  double reconstruction_residual = 0.0;
  double min_weight = 0.0;
};

inline constexpr double kReconstructionTol = 1e-8;
inline constexpr double kGramNullTol = 1e-10;

class ReconstructionFailure : public Error {
 public:
  ReconstructionFailure(const std::string& what, QuasiProbability result)
      : Error(what), result_(std::move(result)) {}
  const QuasiProbability& result() const noexcept { return result_; }

 private:
  QuasiProbability result_;
};

// Solves G p = g with g_k = <a_k,b_k|rho|a_k,b_k>. The pseudoinverse solution
// is shifted within the null space of G so that the weights on the
// superposition families have minimal Euclidean norm. Throws
// ReconstructionFailure when the residual exceeds kReconstructionTol.
QuasiProbability solve_quasiprob(const NoisyNoonOperator& state,
                                 const BasisOptions& options = {});

// min(0, smallest weight); negative values certify entanglement.
double negativity(const QuasiProbability& q);

DensePairOperator reconstruct(const QuasiProbability& q);

}  // namespace noon_ent

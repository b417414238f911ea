#pragma once

// Separability eigenvalue problem L_b|a> = g|a>, L_a|b> = g|b>.

#include <cstdint>
#include <string>
#include <vector>

#include "noon_ent/errors.hpp"
#include "noon_ent/fock.hpp"

namespace noon_ent {

enum class SepBranch {
  trivial_row1,      // |0,0>, g = L0
  trivial_row2,      // |i,0>, g = A_i
  trivial_row3,      // |0,i>, g = B_i
  trivial_row4,      // |i,j>, i, j >= 1, g = 0
  nontrivial_plus,   // coupled index, upper sign
  nontrivial_minus,  // coupled index, lower sign
  degenerate_phase,  // coupled index with A_i = B_i, phase sample k
  mixed,             // superposition over two Fock indices or an uncoupled index
  numeric,           // found by the iterative solver
};

std::string to_string(SepBranch branch);

struct SepSolution {
  double g = 0.0;
  ProductVector vec;
  SepBranch branch = SepBranch::numeric;
  int index = 0;   // primary Fock index, 0 when not applicable
  int index2 = 0;  // second Fock index for two-index solutions
  int phase = -1;  // phase sample k for phi = k pi/2, -1 when not applicable
  double residual = 0.0;
};

struct SepSolutionSet {
  std::vector<SepSolution> solutions;
  double g_max = 0.0;
  // Numeric solver diagnostics.
  int attempts = 0;
  int converged = 0;
};

// Raised when no restart of the numeric solver reaches the tolerance.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, SepSolutionSet partial)
      : Error(what), partial_(std::move(partial)) {}
  const SepSolutionSet& partial() const noexcept { return partial_; }

 private:
  SepSolutionSet partial_;
};

// Residual bound for emitted solutions; operators with entries above ~10^5
// use 64 eps max|L| instead.
inline constexpr double kSepResidualTol = 1e-9;

// Reduced operators: L_b = tr_B[L (1 (x) |b><b|)] acts on mode a,
// L_a = tr_A[L (|a><a| (x) 1)] acts on mode b.
Eigen::MatrixXcd reduced_on_a(const DensePairOperator& op, const Eigen::VectorXcd& b);
Eigen::MatrixXcd reduced_on_b(const DensePairOperator& op, const Eigen::VectorXcd& a);
Eigen::MatrixXcd reduced_on_a(const NoisyNoonOperator& op, const Eigen::VectorXcd& b);
Eigen::MatrixXcd reduced_on_b(const NoisyNoonOperator& op, const Eigen::VectorXcd& a);

// max(|L_b a - g a|, |L_a b - g b|)
double sep_residual(const NoisyNoonOperator& op, const SepSolution& sol);
double sep_residual(const DensePairOperator& op, const SepSolution& sol);
double sep_residual(const NoisyNoonOperator& op, const ProductVector& v, double g);
double sep_residual(const DensePairOperator& op, const ProductVector& v, double g);

// Closed-form solutions for the noisy-N00N operator family. Every emitted
// solution is verified by substitution; coupled indices get four phase
// samples phi = k pi/2 each.
SepSolutionSet solve_sep_analytic(const NoisyNoonOperator& op);

struct NumericSepOptions {
  int restarts = 64;
  // Seesaw sweeps per eigen-branch.
  int max_iter = 500;
  // Residual evaluations allowed in each Levenberg-Marquardt polish.
  int polish_evals = 30;
  double tol = kSepResidualTol;
  std::uint64_t seed = 0x5eedULL;
  // Adds Fock products and equal-weight two-level superpositions as seeds.
  bool structured_seeds = true;
  // 0 picks std::thread::hardware_concurrency().
  int threads = 1;
};

// Seesaw iteration over eigen-branches of the reduced operators, followed by
// a Levenberg-Marquardt polish of the coupled equations. Output is sorted by
// g and independent of the thread count.
SepSolutionSet solve_sep_numeric(const DensePairOperator& op,
                                 const NumericSepOptions& options = {});
SepSolutionSet solve_sep_numeric(const DensePairOperator& op, int restarts,
                                 int max_iter, double tol);

// Sorted separability eigenvalues with entries closer than tol merged.
std::vector<double> distinct_eigenvalues(const SepSolutionSet& set, double tol = 1e-8);

}  // namespace noon_ent

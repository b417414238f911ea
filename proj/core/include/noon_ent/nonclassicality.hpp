#pragma once

// Partial-transpose oracle and the Glauber-Sudarshan P representation of
// Fock-diagonal noisy N00N states.

#include <vector>

#include "noon_ent/fock.hpp"

namespace noon_ent {

enum class Mode { a, b };

// Smallest eigenvalue of the partial transpose over the given mode.
double ppt_min_eigenvalue(const DensePairOperator& state, Mode mode = Mode::b);
double ppt_min_eigenvalue(const NoisyNoonOperator& state, Mode mode = Mode::b);

// coefficient * d^order/d alpha^order d^order/d alpha*^order delta(alpha) delta(beta)
// for mode a, and the analogue in beta for mode b. Order 0 is always stored
// under mode a.
struct DeltaDerivativeTerm {
  Mode mode = Mode::a;
  int order = 0;
  double coefficient = 0.0;
};

struct DeltaDerivativeSeries {
  std::vector<DeltaDerivativeTerm> terms;  // sorted by (order, mode)

  double coefficient(Mode mode, int order) const;
  int max_order(Mode mode) const;
};

// P function of a state without coherences; |k><k| contributes
// sum_j C(k,j)/j! d^j d*^j delta. Throws NotDiagonal if any coherence is nonzero.
DeltaDerivativeSeries glauber_p(const NoisyNoonOperator& state);

// True iff every term has order 0 and a nonnegative coefficient.
bool p_is_classical(const DeltaDerivativeSeries& series);

}  // namespace noon_ent

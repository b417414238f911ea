#pragma once

// Witnesses W = sup{g} 1 - L and interference criteria for noisy N00N states.

#include <string>

#include "noon_ent/fock.hpp"

namespace noon_ent {

enum class Verdict { entangled, inconclusive };

std::string to_string(Verdict v);

inline constexpr double kWitnessTol = 1e-10;

struct WitnessReport {
  double g_sup = 0.0;
  double expectation = 0.0;
  double value = 0.0;  // g_sup - expectation
  Verdict verdict = Verdict::inconclusive;
};

// Report for a separable bound g_sup and a measured <L>.
WitnessReport make_witness_report(double g_sup, double expectation);

// g_sup from the closed-form separability eigenvalues of L, <L> = tr(L rho).
WitnessReport witness_value(const NoisyNoonOperator& l, const NoisyNoonOperator& state);

// |N,0><0,N| + |0,N><N,0|
NoisyNoonOperator interference_operator(int photons);
// interference_operator(photons) + vacuum_weight |0,0><0,0|
NoisyNoonOperator vacuum_interference_operator(int photons, double vacuum_weight = 0.5);

// 1/4 - |rho_{i0,0i}|; negative certifies entanglement.
double interference_criterion(const NoisyNoonOperator& state, int i);
// 1/2 - 2 Re rho_{i0,0i}; negative certifies entanglement.
double real_interference_criterion(const NoisyNoonOperator& state, int i);

// Gaussian dephasing width sqrt(2 ln 2)/N at which the interference
// criterion of a dephased N00N state changes sign.
double dephasing_threshold(int photons);

}  // namespace noon_ent

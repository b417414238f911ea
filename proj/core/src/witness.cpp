#include "noon_ent/witness.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "noon_ent/errors.hpp"
#include "noon_ent/sep.hpp"

namespace noon_ent {

std::string to_string(Verdict v) {
  return v == Verdict::entangled ? "entangled" : "inconclusive";
}

WitnessReport make_witness_report(double g_sup, double expectation) {
  WitnessReport r;
  r.g_sup = g_sup;
  r.expectation = expectation;
  r.value = g_sup - expectation;
  r.verdict = r.value < -kWitnessTol ? Verdict::entangled : Verdict::inconclusive;
  return r;
}

WitnessReport witness_value(const NoisyNoonOperator& l, const NoisyNoonOperator& state) {
  const double g_sup = solve_sep_analytic(l).g_max;
  return make_witness_report(g_sup, trace_product(l, state));
}

NoisyNoonOperator interference_operator(int photons) {
  return vacuum_interference_operator(photons, 0.0);
}

NoisyNoonOperator vacuum_interference_operator(int photons, double vacuum_weight) {
  if (photons < 1) throw std::invalid_argument("photon number must be >= 1");
  std::vector<double> a(photons, 0.0), b(photons, 0.0);
  std::vector<Complex> c(photons, Complex{});
  c.back() = 1.0;
  return make_noisy_noon(vacuum_weight, a, b, c, false);
}

namespace {

Complex checked_coherence(const NoisyNoonOperator& state, int i) {
  if (i < 1 || i > state.n_max()) throw IndexOutOfRange("coherence index outside 1..n_max");
  return state.coherence(i);
}

}  // namespace

double interference_criterion(const NoisyNoonOperator& state, int i) {
  return 0.25 - std::abs(checked_coherence(state, i));
}

double real_interference_criterion(const NoisyNoonOperator& state, int i) {
  return 0.5 - 2.0 * checked_coherence(state, i).real();
}

double dephasing_threshold(int photons) {
  if (photons < 1) throw std::invalid_argument("photon number must be >= 1");
  return std::sqrt(2.0 * std::numbers::ln2) / photons;
}

}  // namespace noon_ent

#pragma once

// Dephasing and loss channels acting on N00N states.

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "noon_ent/fock.hpp"

namespace noon_ent {

// Single-mode phase distributions.
struct PhaseDelta {
  double phi0 = 0.0;
};
struct PhaseUniform {};
struct PhaseWrappedGaussian {
  double width = 0.0;
};
struct PhaseEmpirical {
  std::vector<double> samples;
};

class PhaseDistribution {
 public:
  using Kind = std::variant<PhaseDelta, PhaseUniform, PhaseWrappedGaussian, PhaseEmpirical>;

  // Throws InvalidDistribution for a negative width or an empty sample set.
  explicit PhaseDistribution(Kind kind);

  static PhaseDistribution delta(double phi0 = 0.0) { return PhaseDistribution(PhaseDelta{phi0}); }
  static PhaseDistribution uniform() { return PhaseDistribution(PhaseUniform{}); }
  static PhaseDistribution wrapped_gaussian(double width) {
    return PhaseDistribution(PhaseWrappedGaussian{width});
  }
  static PhaseDistribution empirical(std::vector<double> samples) {
    return PhaseDistribution(PhaseEmpirical{std::move(samples)});
  }

  const Kind& kind() const noexcept { return kind_; }
  // E[exp(i N phi)]
  Complex characteristic(int n) const;

 private:
  Kind kind_;
};

struct PhasePair {
  PhaseDistribution a = PhaseDistribution::delta();
  PhaseDistribution b = PhaseDistribution::delta();
};

// lambda = E[exp(i (phi_a - phi_b) N)] for independent mode phases.
Complex dephasing_factor(const PhasePair& dist, int n);

// Multiplies coherence i by dephasing_factor(dist, i).
NoisyNoonOperator apply_dephasing(const NoisyNoonOperator& state, const PhasePair& dist);

// Distributions of a single transmission coefficient T in [0, 1].
struct FixedTransmission {
  double t = 1.0;
};
struct TwoPointTransmission {
  std::vector<double> values;
  std::vector<double> probabilities;
};
struct BetaTransmission {
  double alpha = 1.0;
  double beta = 1.0;
};

using TransmissionLaw = std::variant<FixedTransmission, TwoPointTransmission, BetaTransmission>;

// Throws InvalidDistribution when parameters are out of range.
void validate(const TransmissionLaw& law);
// <T^k> in closed form.
double law_moment(const TransmissionLaw& law, int k);

// Provider of joint moments <T_a^m T_b^n>.
class TransmissionMoments {
 public:
  double moment(int m, int n) const;
  // Standard error of a Monte-Carlo estimate; zero for exact providers.
  double standard_error(int m, int n) const;
  bool is_correlated() const noexcept;
  bool is_monte_carlo() const noexcept;

  struct Impl;

 private:
  friend TransmissionMoments moments_deterministic(double, double);
  friend TransmissionMoments moments_correlated(TransmissionLaw);
  friend TransmissionMoments moments_product(TransmissionLaw, TransmissionLaw);
  friend TransmissionMoments moments_table(std::map<std::pair<int, int>, double>);
  friend TransmissionMoments moments_monte_carlo(TransmissionLaw, std::int64_t,
                                                 std::uint64_t, int);
  explicit TransmissionMoments(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

// Independent fixed transmissions t_a, t_b.
TransmissionMoments moments_deterministic(double t_a, double t_b);
inline TransmissionMoments moments_correlated_deterministic(double t) {
  return moments_deterministic(t, t);
}
// T_a = T_b = T drawn from law.
TransmissionMoments moments_correlated(TransmissionLaw law);
inline TransmissionMoments moments_two_point(std::vector<double> values,
                                             std::vector<double> probabilities) {
  return moments_correlated(TwoPointTransmission{std::move(values), std::move(probabilities)});
}
inline TransmissionMoments moments_beta(double alpha, double beta) {
  return moments_correlated(BetaTransmission{alpha, beta});
}
// T_a and T_b independent.
TransmissionMoments moments_product(TransmissionLaw law_a, TransmissionLaw law_b);
// Precomputed joint moments; (0,0) must be present and equal to 1.
TransmissionMoments moments_table(std::map<std::pair<int, int>, double> table);
// Correlated moments estimated from `count` samples of law (count >= 10^4),
// up to total order max_order.
TransmissionMoments moments_monte_carlo(TransmissionLaw law, std::int64_t count,
                                        std::uint64_t seed, int max_order = 32);

// Output of a lossy channel for the input (|N,0> + |0,N>)/sqrt(2).
NoisyNoonOperator apply_atmospheric_loss(int photons, const TransmissionMoments& moments);

}  // namespace noon_ent

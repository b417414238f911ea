#pragma once

// JSON ingestion of state and channel specifications.
//
// State:   {"L0": r, "terms": [{"i": int, "A": r, "B": r, "coh": [re, im]}, ...],
//           "state": bool}
// Channel: {"dephasing": {"kind": ..., ...}, "loss": {"kind": ..., ...}}
// Both throw ParseError on malformed input.

#include <optional>
#include <string>
#include <string_view>

#include "noon_ent/channels.hpp"
#include "noon_ent/fock.hpp"

namespace noon_ent {

NoisyNoonOperator parse_state_spec(std::string_view text);
std::string state_to_json(const NoisyNoonOperator& op);

// Dephasing kinds: delta {phi0}, uniform, wrapped_gaussian {delta},
// empirical {samples}; applied to mode b.
// Loss kinds: deterministic {t_a, t_b}, correlated_deterministic {t},
// two_point {values, probabilities}, beta {alpha, beta},
// table {entries: [[m, n, value], ...]}, monte_carlo {of: <law>, count, seed}.
struct ChannelSpec {
  std::optional<PhasePair> dephasing;
  std::optional<TransmissionMoments> loss;
};

ChannelSpec parse_channel_spec(std::string_view text);

// N00N state of the given photon number sent through loss, then dephasing.
NoisyNoonOperator apply_channel(int photons, const ChannelSpec& spec);

}  // namespace noon_ent

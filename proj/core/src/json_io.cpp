#include "noon_ent/json_io.hpp"

#include <set>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "noon_ent/errors.hpp"

namespace noon_ent {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string("field '") + what + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number(obj.at(key), key) : fallback;
}

std::vector<double> numbers(const json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string("field '") + what + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, what));
  return out;
}

std::string kind_of(const json& obj) {
  const json& k = require(obj, "kind");
  if (!k.is_string()) throw ParseError("field 'kind' must be a string");
  return k.get<std::string>();
}

TransmissionLaw parse_law(const json& obj) {
  const std::string kind = kind_of(obj);
  if (kind == "fixed" || kind == "correlated_deterministic") {
    return FixedTransmission{number(require(obj, "t"), "t")};
  }
  if (kind == "two_point") {
    return TwoPointTransmission{numbers(require(obj, "values"), "values"),
                                numbers(require(obj, "probabilities"), "probabilities")};
  }
  if (kind == "beta") {
    return BetaTransmission{number(require(obj, "alpha"), "alpha"),
                            number(require(obj, "beta"), "beta")};
  }
  throw ParseError("unknown transmission law '" + kind + "'");
}

PhaseDistribution parse_phase(const json& obj) {
  const std::string kind = kind_of(obj);
  if (kind == "delta") return PhaseDistribution::delta(number_or(obj, "phi0", 0.0));
  if (kind == "uniform") return PhaseDistribution::uniform();
  if (kind == "wrapped_gaussian") {
    return PhaseDistribution::wrapped_gaussian(number(require(obj, "delta"), "delta"));
  }
  if (kind == "empirical") {
    return PhaseDistribution::empirical(numbers(require(obj, "samples"), "samples"));
  }
  throw ParseError("unknown dephasing kind '" + kind + "'");
}

TransmissionMoments parse_loss(const json& obj) {
  const std::string kind = kind_of(obj);
  if (kind == "deterministic") {
    return moments_deterministic(number(require(obj, "t_a"), "t_a"),
                                 number(require(obj, "t_b"), "t_b"));
  }
  if (kind == "correlated_deterministic") {
    return moments_correlated_deterministic(number(require(obj, "t"), "t"));
  }
  if (kind == "two_point" || kind == "beta") return moments_correlated(parse_law(obj));
  if (kind == "table") {
    std::map<std::pair<int, int>, double> table;
    for (const auto& e : require(obj, "entries")) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        throw ParseError("table entries must be [m, n, value]");
      }
      table[{e[0].get<int>(), e[1].get<int>()}] = number(e[2], "value");
    }
    return moments_table(std::move(table));
  }
  if (kind == "monte_carlo") {
    const json& count = require(obj, "count");
    if (!count.is_number_integer()) throw ParseError("field 'count' must be an integer");
    const json& seed = obj.contains("seed") ? obj.at("seed") : json(0);
    if (!seed.is_number_integer()) throw ParseError("field 'seed' must be an integer");
    return moments_monte_carlo(parse_law(require(obj, "of")), count.get<std::int64_t>(),
                               seed.get<std::uint64_t>());
  }
  throw ParseError("unknown loss kind '" + kind + "'");
}

}  // namespace

NoisyNoonOperator parse_state_spec(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("state spec must be an object");
  const double l0 = number(require(doc, "L0"), "L0");
  const json& terms = require(doc, "terms");
  if (!terms.is_array()) throw ParseError("field 'terms' must be an array");

  bool as_state = true;
  if (doc.contains("state")) {
    if (!doc.at("state").is_boolean()) throw ParseError("field 'state' must be a boolean");
    as_state = doc.at("state").get<bool>();
  }

  int n = 1;
  std::set<int> seen;
  for (const auto& t : terms) {
    const json& i = require(t, "i");
    if (!i.is_number_integer() || i.get<int>() < 1) {
      throw ParseError("term index 'i' must be an integer >= 1");
    }
    if (!seen.insert(i.get<int>()).second) throw ParseError("duplicate term index");
    n = std::max(n, i.get<int>());
  }
  std::vector<double> a(n, 0.0), b(n, 0.0);
  std::vector<Complex> c(n, Complex{});
  for (const auto& t : terms) {
    const int i = t.at("i").get<int>() - 1;
    a[i] = number_or(t, "A", 0.0);
    b[i] = number_or(t, "B", 0.0);
    if (t.contains("coh")) {
      const auto parts = numbers(t.at("coh"), "coh");
      if (parts.size() != 2) throw ParseError("field 'coh' must be [re, im]");
      c[i] = Complex{parts[0], parts[1]};
    }
  }
  try {
    return make_noisy_noon(l0, a, b, c, as_state);
  } catch (const LengthMismatch& e) {
    throw ParseError(e.what());
  }
}

std::string state_to_json(const NoisyNoonOperator& op) {
  json doc;
  doc["L0"] = op.vacuum();
  doc["terms"] = json::array();
  for (int i = 1; i <= op.n_max(); ++i) {
    if (!op.index_active(i)) continue;
    const Complex c = op.coherence(i);
    doc["terms"].push_back(
        {{"i", i}, {"A", op.diag_a(i)}, {"B", op.diag_b(i)}, {"coh", {c.real(), c.imag()}}});
  }
  doc["state"] = op.is_state();
  return doc.dump();
}

ChannelSpec parse_channel_spec(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("channel spec must be an object");
  ChannelSpec spec;
  if (doc.contains("dephasing") && !doc.at("dephasing").is_null()) {
    spec.dephasing = PhasePair{PhaseDistribution::delta(), parse_phase(doc.at("dephasing"))};
  }
  if (doc.contains("loss") && !doc.at("loss").is_null()) {
    spec.loss = parse_loss(doc.at("loss"));
  }
  return spec;
}

NoisyNoonOperator apply_channel(int photons, const ChannelSpec& spec) {
  NoisyNoonOperator out =
      spec.loss ? apply_atmospheric_loss(photons, *spec.loss) : pure_noon_state(photons);
  if (spec.dephasing) out = apply_dephasing(out, *spec.dephasing);
  return out;
}

}  // namespace noon_ent

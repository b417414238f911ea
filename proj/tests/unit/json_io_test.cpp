#include <doctest.h>

#include <cmath>

#include "noon_ent/errors.hpp"
#include "noon_ent/json_io.hpp"

using namespace noon_ent;
using doctest::Approx;

TEST_CASE("state spec parsing") {
  const auto s = parse_state_spec(
      R"({"L0": 0.0, "terms": [{"i": 2, "A": 0.5, "B": 0.5, "coh": [0.5, 0.0]}], "state": true})");
  CHECK((to_dense(s).matrix() - to_dense(pure_noon_state(2)).matrix()).norm() == 0.0);

  const auto op = parse_state_spec(R"({"L0": 0.5, "terms": [{"i": 1, "coh": [0, 1]}], "state": false})");
  CHECK_FALSE(op.is_state());
  CHECK(op.coherence(1) == Complex{0.0, 1.0});
  CHECK(op.diag_a(1) == 0.0);

  const auto back = parse_state_spec(state_to_json(s));
  CHECK((to_dense(back).matrix() - to_dense(s).matrix()).norm() == 0.0);
  CHECK(back.is_state());
}

TEST_CASE("state spec errors") {
  CHECK_THROWS_AS(parse_state_spec("{not json"), ParseError);
  CHECK_THROWS_AS(parse_state_spec(R"({"terms": []})"), ParseError);
  CHECK_THROWS_AS(parse_state_spec(R"({"L0": 1, "terms": 3})"), ParseError);
  CHECK_THROWS_AS(parse_state_spec(R"({"L0": 1, "terms": [{"i": 0}]})"), ParseError);
  CHECK_THROWS_AS(parse_state_spec(R"({"L0": 1, "terms": [{"i": 1.5}]})"), ParseError);
  CHECK_THROWS_AS(parse_state_spec(R"({"L0": 0, "terms": [{"i": 1, "A": 0.5}, {"i": 1, "B": 0.5}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_state_spec(R"({"L0": 0, "terms": [{"i": 1, "A": 1, "coh": [1]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_state_spec(R"({"L0": "x", "terms": []})"), ParseError);
  CHECK_THROWS_AS(parse_state_spec(R"({"L0": 0.5, "terms": []})"), TraceError);
}

TEST_CASE("channel specs") {
  const auto deph = parse_channel_spec(R"({"dephasing": {"kind": "wrapped_gaussian", "delta": 0.5}})");
  REQUIRE(deph.dephasing);
  CHECK_FALSE(deph.loss);
  const auto s = apply_channel(2, deph);
  CHECK(s.coherence(2).real() == Approx(0.5 * std::exp(-0.5)));

  const auto loss = parse_channel_spec(R"({"loss": {"kind": "beta", "alpha": 2, "beta": 3}})");
  REQUIRE(loss.loss);
  CHECK(apply_channel(2, loss).coherence(2).real() ==
        Approx(0.5 * law_moment(BetaTransmission{2, 3}, 4)));

  const auto both = parse_channel_spec(
      R"({"loss": {"kind": "two_point", "values": [0.5, 1.0], "probabilities": [0.5, 0.5]},
          "dephasing": {"kind": "uniform"}})");
  const auto out = apply_channel(2, both);
  CHECK(out.coherence(2) == Complex{});
  CHECK(out.vacuum() == Approx(0.5 * std::pow(0.75, 2)));

  CHECK(parse_channel_spec(R"({"loss": {"kind": "deterministic", "t_a": 0.5, "t_b": 1}})").loss);
  CHECK(parse_channel_spec(R"({"loss": {"kind": "correlated_deterministic", "t": 0.5}})").loss);
  CHECK(parse_channel_spec(R"({"loss": {"kind": "table", "entries": [[0,0,1],[4,0,0.3],[0,4,0.3],[2,2,0.3]]}})")
            .loss->moment(2, 2) == 0.3);
  const auto mc = parse_channel_spec(
      R"({"loss": {"kind": "monte_carlo", "of": {"kind": "beta", "alpha": 2, "beta": 3}, "count": 10000, "seed": 3}})");
  CHECK(mc.loss->is_monte_carlo());
  CHECK(parse_channel_spec(R"({"dephasing": {"kind": "delta", "phi0": 0.2}})").dephasing);
  CHECK(parse_channel_spec(R"({"dephasing": {"kind": "empirical", "samples": [0.1, -0.1]}})").dephasing);
  CHECK(parse_channel_spec("{}").dephasing == std::nullopt);

  CHECK_THROWS_AS(parse_channel_spec(R"({"dephasing": {"kind": "lorentzian"}})"), ParseError);
  CHECK_THROWS_AS(parse_channel_spec(R"({"loss": {"kind": "beta", "alpha": 2}})"), ParseError);
  CHECK_THROWS_AS(parse_channel_spec(R"({"loss": {"kind": "table", "entries": [[0, 0]]}})"), ParseError);
  CHECK_THROWS_AS(parse_channel_spec(R"({"loss": {"kind": "beta", "alpha": -1, "beta": 1}})"),
                  InvalidDistribution);
  CHECK_THROWS_AS(parse_channel_spec("[1, 2]"), ParseError);
}

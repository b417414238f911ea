#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "noon_ent/errors.hpp"
#include "noon_ent/json_io.hpp"
#include "noon_ent/nonclassicality.hpp"
#include "noon_ent/quasiprob.hpp"
#include "noon_ent/sep.hpp"
#include "noon_ent/witness.hpp"
#include "sweep.hpp"

namespace noon_ent::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  std::string out_path;
  std::string format;  // json or csv; empty picks the subcommand default
  double tol = 1e-9;

  bool csv(bool by_default = false) const { return format.empty() ? by_default : format == "csv"; }
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_json(const Eigen::VectorXcd& v) {
  Json arr = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(complex_json(v(k)));
  return arr;
}

Json witness_json(const WitnessReport& r) {
  return Json{{"g_sup", r.g_sup},
              {"expectation", r.expectation},
              {"value", r.value},
              {"verdict", to_string(r.verdict)}};
}

Json quasiprob_json(const QuasiProbability& q) {
  Json labels = Json::array(), weights = Json::array();
  for (std::size_t k = 0; k < q.basis.size(); ++k) {
    labels.push_back(q.basis[k].label);
    weights.push_back(q.weights[k]);
  }
  return Json{{"labels", labels},
              {"weights", weights},
              {"min_weight", negativity(q)},
              {"residual", q.reconstruction_residual},
              {"gram_rank", q.gram_rank}};
}

// Flattens nested objects into key,value rows.
void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), out);
  } else if (j.is_number()) {
    out += prefix + ',' + format_number(j.get<double>()) + '\n';
  } else {
    out += prefix + ',' + (j.is_string() ? j.get<std::string>() : j.dump()) + '\n';
  }
}

std::string key_value_csv(const Json& j) {
  std::string out = "key,value\n";
  flatten(j, "", out);
  return out;
}

// Largest index with a nonzero coherence, or n_max when there is none.
int leading_index(const NoisyNoonOperator& s) {
  for (int i = s.n_max(); i >= 1; --i) {
    if (s.coherence(i) != Complex{}) return i;
  }
  return s.n_max();
}

class App {
 public:
  App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Entanglement analysis of noisy N00N states", "noon-ent"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--out", g_.out_path, "Write the result to this file instead of stdout");
    app.add_option("--format", g_.format,
                   "json or csv (default: csv for sweep and tripartite, json otherwise)")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol", g_.tol, "Negativity threshold for quasiprobability verdicts")
        ->check(CLI::PositiveNumber);

    std::string state_path, operator_path;
    std::optional<int> force_index;

    auto* analyze = app.add_subcommand("analyze", "Full report for a state spec");
    analyze->add_option("state", state_path, "State spec (JSON file, - for stdin)")->required();
    analyze->add_option("--operator", operator_path,
                        "Witness operator spec (default: interference operator)");

    bool numeric = false;
    NumericSepOptions sep_opts;
    auto* sep = app.add_subcommand("sep-solve", "Separability eigenvalues of an operator");
    sep->add_option("operator", operator_path, "Operator spec (JSON)")->required();
    sep->add_flag("--numeric", numeric, "Use the iterative solver on the dense form");
    sep->add_option("--restarts", sep_opts.restarts, "Random restarts")->check(CLI::PositiveNumber);
    sep->add_option("--seed", sep_opts.seed, "Random seed");

    auto* witness = app.add_subcommand("witness", "Witness value of an operator on a state");
    witness->add_option("operator", operator_path, "Operator spec (JSON)")->required();
    witness->add_option("state", state_path, "State spec (JSON)")->required();

    auto* quasi = app.add_subcommand("quasiprob", "Entanglement quasiprobability");
    quasi->add_option("state", state_path, "State spec (JSON)")->required();
    quasi->add_option("--force-index", force_index,
                      "Keep the superposition family of this index even without coherence");

    SweepSpec sweep_spec;
    std::string parameter = "delta";
    auto add_range = [&](CLI::App* sub) {
      sub->add_option("--start", sweep_spec.start, "First parameter value")->required();
      sub->add_option("--stop", sweep_spec.stop, "Last parameter value")->required();
      sub->add_option("--steps", sweep_spec.steps, "Number of points (>= 2)")->required();
      sub->add_option("-N,--photons", sweep_spec.photons, "Photon number");
    };
    auto* sweep = app.add_subcommand("sweep", "Criteria along a noise parameter (CSV)");
    sweep->add_option("--parameter", parameter, "delta, t4_moment or lambda")
        ->check(CLI::IsMember({"delta", "t4_moment", "lambda"}));
    add_range(sweep);
    auto* tri = app.add_subcommand("tripartite", "Dephased W-state witnesses (CSV)");
    add_range(tri);

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::Success& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, err_, err_);
      return kExitError;
    }

    try {
      if (analyze->parsed()) return cmd_analyze(state_path, operator_path);
      if (sep->parsed()) return cmd_sep(operator_path, numeric, sep_opts);
      if (witness->parsed()) return cmd_witness(operator_path, state_path);
      if (quasi->parsed()) return cmd_quasiprob(state_path, force_index);
      if (sweep->parsed()) {
        sweep_spec.parameter = parse_sweep_parameter(parameter);
        return cmd_sweep(sweep_spec);
      }
      if (tri->parsed()) return cmd_tripartite(sweep_spec);
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitError;
    }
    return kExitError;
  }

 private:
  int emit(const std::string& text) {
    if (g_.out_path.empty()) {
      out_ << text;
      out_.flush();
      return 0;
    }
    std::ofstream f(g_.out_path, std::ios::binary);
    if (!f) throw Error("cannot write '" + g_.out_path + "'");
    f << text;
    return 0;
  }

  void emit_json(const Json& j) {
    emit(g_.csv() ? key_value_csv(j) : j.dump(2) + "\n");
  }

  int cmd_analyze(const std::string& state_path, const std::string& operator_path) {
    const auto state = parse_state_spec(read_input(state_path));
    if (!state.is_state()) throw Error("analyze needs a state (\"state\": true)");
    const auto l = operator_path.empty() ? interference_operator(leading_index(state))
                                         : parse_state_spec(read_input(operator_path));
    const auto q = solve_quasiprob(state);
    const auto w = witness_value(l, state);

    Json criteria = Json::array();
    for (int i = 1; i <= state.n_max(); ++i) {
      if (state.coherence(i) == Complex{}) continue;
      criteria.push_back(Json{{"index", i},
                              {"modulus", interference_criterion(state, i)},
                              {"real_part", real_interference_criterion(state, i)}});
    }
    const bool entangled = q.min_weight < -g_.tol || w.verdict == Verdict::entangled;
    Json report{{"state", Json::parse(state_to_json(state))},
                {"interference_criteria", criteria},
                {"witness", witness_json(w)},
                {"quasiprobability", quasiprob_json(q)},
                {"ppt_min_eigenvalue", ppt_min_eigenvalue(state)},
                {"sep_g_max", solve_sep_analytic(state).g_max},
                {"verdict", entangled ? "entangled" : "inconclusive"}};
    emit_json(report);
    return entangled ? kExitEntangled : kExitInconclusive;
  }

  int cmd_sep(const std::string& operator_path, bool numeric, NumericSepOptions opts) {
    const auto op = parse_state_spec(read_input(operator_path));
    SepSolutionSet set;
    if (numeric) {
      opts.threads = thread_count_from_env();
      set = solve_sep_numeric(to_dense(op), opts);
    } else {
      set = solve_sep_analytic(op);
    }
    if (g_.csv()) {
      std::string csv = "g,branch,index,index2,phase,residual\n";
      for (const auto& s : set.solutions) {
        csv += format_number(s.g) + ',' + to_string(s.branch) + ',' + std::to_string(s.index) +
               ',' + std::to_string(s.index2) + ',' + std::to_string(s.phase) + ',' +
               format_number(s.residual) + '\n';
      }
      return emit(csv);
    }
    Json sols = Json::array();
    for (const auto& s : set.solutions) {
      sols.push_back(Json{{"g", s.g},
                          {"branch", to_string(s.branch)},
                          {"index", s.index},
                          {"index2", s.index2},
                          {"phase", s.phase},
                          {"residual", s.residual},
                          {"a", vector_json(s.vec.a())},
                          {"b", vector_json(s.vec.b())}});
    }
    Json distinct = Json::array();
    for (double g : distinct_eigenvalues(set)) distinct.push_back(g);
    emit_json(Json{{"g_max", set.g_max}, {"distinct", distinct}, {"solutions", sols}});
    return 0;
  }

  int cmd_witness(const std::string& operator_path, const std::string& state_path) {
    const auto l = parse_state_spec(read_input(operator_path));
    const auto state = parse_state_spec(read_input(state_path));
    const auto w = witness_value(l, state);
    emit_json(witness_json(w));
    return w.verdict == Verdict::entangled ? kExitEntangled : kExitInconclusive;
  }

  int cmd_quasiprob(const std::string& state_path, std::optional<int> force_index) {
    const auto state = parse_state_spec(read_input(state_path));
    BasisOptions opts;
    if (force_index) opts.coherent_indices.push_back(*force_index);
    const auto q = solve_quasiprob(state, opts);
    if (g_.csv()) {
      std::string csv = "label,weight\n";
      for (std::size_t k = 0; k < q.basis.size(); ++k) {
        csv += q.basis[k].label + ',' + format_number(q.weights[k]) + '\n';
      }
      emit(csv);
    } else {
      emit_json(quasiprob_json(q));
    }
    return q.min_weight < -g_.tol ? kExitEntangled : kExitInconclusive;
  }

  int cmd_sweep(const SweepSpec& spec) {
    const auto rows = run_sweep(spec, thread_count_from_env());
    if (!g_.csv(true)) {
      Json arr = Json::array();
      for (const auto& r : rows) {
        arr.push_back(Json{{"parameter", r.parameter},
                           {"witness_value", r.witness_value},
                           {"min_weight", r.min_weight},
                           {"ppt_min", r.ppt_min}});
      }
      return emit(arr.dump(2) + "\n");
    }
    return emit(sweep_csv(rows));
  }

  int cmd_tripartite(const SweepSpec& spec) {
    const auto rows = run_tripartite(spec);
    if (!g_.csv(true)) {
      Json arr = Json::array();
      for (const auto& r : rows) {
        arr.push_back(Json{{"delta", r.delta},
                           {"partial_value", r.partial_value},
                           {"full_value", r.full_value}});
      }
      return emit(arr.dump(2) + "\n");
    }
    return emit(tripartite_csv(rows));
  }

  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return App(out, err).run(argc, argv);
}

}  // namespace noon_ent::cli

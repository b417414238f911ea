#include "sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "noon_ent/channels.hpp"
#include "noon_ent/multipartite.hpp"
#include "noon_ent/nonclassicality.hpp"
#include "noon_ent/quasiprob.hpp"
#include "noon_ent/witness.hpp"

namespace noon_ent::cli {

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "delta") return SweepParameter::delta;
  if (name == "t4_moment") return SweepParameter::t4_moment;
  if (name == "lambda") return SweepParameter::lambda;
  throw std::invalid_argument("unknown sweep parameter '" + name + "'");
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::delta: return "delta";
    case SweepParameter::t4_moment: return "t4_moment";
    case SweepParameter::lambda: return "lambda";
  }
  return "";
}

void validate(const SweepSpec& spec) {
  if (!(spec.start < spec.stop)) throw std::invalid_argument("sweep needs start < stop");
  if (spec.steps < 2) throw std::invalid_argument("sweep needs steps >= 2");
  if (spec.photons < 1) throw std::invalid_argument("photon number must be >= 1");
  const bool unit = spec.parameter != SweepParameter::delta;
  if (spec.start < 0.0 || (unit && spec.stop > 1.0)) {
    throw std::invalid_argument("sweep range outside the parameter domain");
  }
}

std::vector<double> sweep_points(const SweepSpec& spec) {
  validate(spec);
  std::vector<double> x(spec.steps);
  const double h = (spec.stop - spec.start) / (spec.steps - 1);
  for (int k = 0; k < spec.steps; ++k) x[k] = spec.start + k * h;
  x.back() = spec.stop;
  return x;
}

namespace {

NoisyNoonOperator sweep_state(SweepParameter p, double x, int n) {
  switch (p) {
    case SweepParameter::delta:
      return apply_dephasing(pure_noon_state(n), PhasePair{PhaseDistribution::delta(),
                                                           PhaseDistribution::wrapped_gaussian(x)});
    case SweepParameter::lambda: {
      std::vector<double> a(n, 0.0), b(n, 0.0);
      std::vector<Complex> c(n, Complex{});
      a.back() = b.back() = 0.5;
      c.back() = 0.5 * x;
      return make_noisy_noon(0.0, a, b, c, true);
    }
    case SweepParameter::t4_moment:
      return apply_atmospheric_loss(n, moments_correlated_deterministic(std::pow(x, 0.25)));
  }
  throw std::logic_error("unhandled sweep parameter");
}

template <class F>
void parallel_for(int count, int threads, F&& f) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int k = 0; k < count; ++k) f(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int k; (k = next.fetch_add(1)) < count;) f(k);
    });
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  const auto x = sweep_points(spec);
  std::vector<SweepRow> rows(x.size());
  parallel_for(static_cast<int>(x.size()), threads, [&](int k) {
    const auto state = sweep_state(spec.parameter, x[k], spec.photons);
    // Total loss leaves the vacuum, whose truncation no longer reaches N.
    const bool reaches = state.n_max() >= spec.photons;
    BasisOptions basis;
    if (reaches) basis.coherent_indices.push_back(spec.photons);
    const auto q = solve_quasiprob(state, basis);
    rows[k] = SweepRow{x[k], reaches ? interference_criterion(state, spec.photons) : 0.25,
                       negativity(q), ppt_min_eigenvalue(state)};
  });
  return rows;
}

std::vector<TripartiteRow> run_tripartite(const SweepSpec& spec) {
  const auto x = sweep_points(spec);
  std::vector<TripartiteRow> rows;
  const auto w = w_state(spec.photons, 3);
  for (double delta : x) {
    const auto s = dephase_one_mode(w, delta);
    rows.push_back({delta, tripartite_witness(s, SeparabilityKind::partial).value,
                    tripartite_witness(s, SeparabilityKind::full).value});
  }
  return rows;
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, r.ptr);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "parameter,witness_value,min_weight,ppt_min\n";
  for (const auto& r : rows) {
    out += format_number(r.parameter) + ',' + format_number(r.witness_value) + ',' +
           format_number(r.min_weight) + ',' + format_number(r.ppt_min) + '\n';
  }
  return out;
}

std::string tripartite_csv(const std::vector<TripartiteRow>& rows) {
  std::string out = "delta,partial_value,full_value\n";
  for (const auto& r : rows) {
    out += format_number(r.delta) + ',' + format_number(r.partial_value) + ',' +
           format_number(r.full_value) + '\n';
  }
  return out;
}

int thread_count_from_env() {
  const char* env = std::getenv("NOON_ENT_THREADS");
  int n = 0;
  if (env != nullptr) {
    const std::string_view s(env);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), n);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || n < 0) {
      throw std::invalid_argument("NOON_ENT_THREADS must be a nonnegative integer");
    }
  }
  if (n == 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return n;
}

}  // namespace noon_ent::cli

#pragma once

#include <string>
#include <vector>

namespace noon_ent::cli {

enum class SweepParameter { delta, t4_moment, lambda };

SweepParameter parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter p);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::delta;
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
  int photons = 2;
};

// Throws std::invalid_argument unless start < stop, steps >= 2, photons >= 1.
void validate(const SweepSpec& spec);
// start + k (stop - start) / (steps - 1), with the last point exactly stop.
std::vector<double> sweep_points(const SweepSpec& spec);

struct SweepRow {
  double parameter = 0.0;
  double witness_value = 0.0;  // 1/4 - |rho_{N0,0N}|
  double min_weight = 0.0;  // min(0, smallest quasiprobability weight)
  double ppt_min = 0.0;
};

// delta: Gaussian dephasing of width delta on mode b; lambda: coherence
// scaled by lambda; t4_moment: correlated loss with fixed T = <T^4>^(1/4).
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads);

struct TripartiteRow {
  double delta = 0.0;
  double partial_value = 0.0;
  double full_value = 0.0;
};

std::vector<TripartiteRow> run_tripartite(const SweepSpec& spec);

// 12 significant digits, '.' separator, independent of the locale.
std::string format_number(double x);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string tripartite_csv(const std::vector<TripartiteRow>& rows);

// NOON_ENT_THREADS, 0 or unset meaning hardware concurrency.
int thread_count_from_env();

}  // namespace noon_ent::cli

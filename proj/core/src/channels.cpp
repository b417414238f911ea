#include "noon_ent/channels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "noon_ent/errors.hpp"

namespace noon_ent {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return std::round(c);
}

void require_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in [0, 1], got " << t;
    throw InvalidDistribution(msg.str());
  }
}

}  // namespace

PhaseDistribution::PhaseDistribution(Kind kind) : kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [](const PhaseWrappedGaussian& g) {
                   if (!(g.width >= 0.0) || !std::isfinite(g.width)) {
                     throw InvalidDistribution("wrapped Gaussian width must be >= 0");
                   }
                 },
                 [](const PhaseEmpirical& e) {
                   if (e.samples.empty()) {
                     throw InvalidDistribution("empirical phase distribution needs samples");
                   }
                 },
                 [](const auto&) {},
             },
             kind_);
}

Complex PhaseDistribution::characteristic(int n) const {
  return std::visit(
      Overloaded{
          [n](const PhaseDelta& d) { return std::polar(1.0, n * d.phi0); },
          [n](const PhaseUniform&) { return n == 0 ? Complex{1.0} : Complex{}; },
          [n](const PhaseWrappedGaussian& g) {
            const double x = g.width * n;
            return Complex{std::exp(-0.5 * x * x)};
          },
          [n](const PhaseEmpirical& e) {
            Complex sum{};
            for (double phi : e.samples) sum += std::polar(1.0, n * phi);
            return sum / static_cast<double>(e.samples.size());
          },
      },
      kind_);
}

Complex dephasing_factor(const PhasePair& dist, int n) {
  if (n < 1) throw std::invalid_argument("photon number must be >= 1");
  return dist.a.characteristic(n) * std::conj(dist.b.characteristic(n));
}

NoisyNoonOperator apply_dephasing(const NoisyNoonOperator& state, const PhasePair& dist) {
  std::vector<Complex> coh(state.coherences().begin(), state.coherences().end());
  for (std::size_t k = 0; k < coh.size(); ++k) {
    if (coh[k] != Complex{}) coh[k] *= dephasing_factor(dist, static_cast<int>(k) + 1);
  }
  return make_noisy_noon(state.vacuum(), state.diag_a(), state.diag_b(), coh,
                         state.is_state());
}

void validate(const TransmissionLaw& law) {
  std::visit(
      Overloaded{
          [](const FixedTransmission& f) { require_unit_interval(f.t, "transmission"); },
          [](const TwoPointTransmission& p) {
            if (p.values.empty() || p.values.size() != p.probabilities.size()) {
              throw InvalidDistribution("values and probabilities must be nonempty and equal in length");
            }
            double total = 0.0;
            for (std::size_t k = 0; k < p.values.size(); ++k) {
              require_unit_interval(p.values[k], "transmission value");
              require_unit_interval(p.probabilities[k], "probability");
              total += p.probabilities[k];
            }
            if (std::abs(total - 1.0) > 1e-12) {
              throw InvalidDistribution("probabilities must sum to 1");
            }
          },
          [](const BetaTransmission& b) {
            if (!(b.alpha > 0.0) || !(b.beta > 0.0) || !std::isfinite(b.alpha) ||
                !std::isfinite(b.beta)) {
              throw InvalidDistribution("beta parameters must be positive");
            }
          },
      },
      law);
}

double law_moment(const TransmissionLaw& law, int k) {
  if (k < 0) throw std::invalid_argument("moment order must be >= 0");
  return std::visit(Overloaded{
                        [k](const FixedTransmission& f) { return std::pow(f.t, k); },
                        [k](const TwoPointTransmission& p) {
                          double m = 0.0;
                          for (std::size_t j = 0; j < p.values.size(); ++j) {
                            m += p.probabilities[j] * std::pow(p.values[j], k);
                          }
                          return m;
                        },
                        [k](const BetaTransmission& b) {
                          double m = 1.0;
                          for (int j = 0; j < k; ++j) m *= (b.alpha + j) / (b.alpha + b.beta + j);
                          return m;
                        },
                    },
                    law);
}

struct TransmissionMoments::Impl {
  struct Correlated {
    TransmissionLaw law;
  };
  struct Product {
    TransmissionLaw a;
    TransmissionLaw b;
  };
  struct Table {
    std::map<std::pair<int, int>, double> values;
  };
  struct Sampled {
    std::vector<double> mean;  // index = total order
    std::vector<double> error;
  };
  std::variant<Correlated, Product, Table, Sampled> backing;
};

double TransmissionMoments::moment(int m, int n) const {
  if (m < 0 || n < 0) throw std::invalid_argument("moment orders must be >= 0");
  return std::visit(
      Overloaded{
          [&](const Impl::Correlated& c) { return law_moment(c.law, m + n); },
          [&](const Impl::Product& p) { return law_moment(p.a, m) * law_moment(p.b, n); },
          [&](const Impl::Table& t) {
            auto it = t.values.find({m, n});
            if (it == t.values.end()) {
              std::ostringstream msg;
              msg << "moment table has no entry (" << m << ", " << n << ")";
              throw MomentUnavailable(msg.str());
            }
            return it->second;
          },
          [&](const Impl::Sampled& s) {
            if (static_cast<std::size_t>(m + n) >= s.mean.size()) {
              throw MomentUnavailable("Monte-Carlo moments not precomputed to this order");
            }
            return s.mean[m + n];
          },
      },
      impl_->backing);
}

double TransmissionMoments::standard_error(int m, int n) const {
  if (const auto* s = std::get_if<Impl::Sampled>(&impl_->backing)) {
    if (m < 0 || n < 0 || static_cast<std::size_t>(m + n) >= s->error.size()) {
      throw MomentUnavailable("Monte-Carlo moments not precomputed to this order");
    }
    return s->error[m + n];
  }
  return 0.0;
}

bool TransmissionMoments::is_correlated() const noexcept {
  return std::holds_alternative<Impl::Correlated>(impl_->backing) ||
         std::holds_alternative<Impl::Sampled>(impl_->backing);
}

bool TransmissionMoments::is_monte_carlo() const noexcept {
  return std::holds_alternative<Impl::Sampled>(impl_->backing);
}

TransmissionMoments moments_deterministic(double t_a, double t_b) {
  return moments_product(FixedTransmission{t_a}, FixedTransmission{t_b});
}

TransmissionMoments moments_correlated(TransmissionLaw law) {
  validate(law);
  auto impl = std::make_shared<TransmissionMoments::Impl>();
  impl->backing = TransmissionMoments::Impl::Correlated{std::move(law)};
  return TransmissionMoments(std::move(impl));
}

TransmissionMoments moments_product(TransmissionLaw law_a, TransmissionLaw law_b) {
  validate(law_a);
  validate(law_b);
  auto impl = std::make_shared<TransmissionMoments::Impl>();
  impl->backing = TransmissionMoments::Impl::Product{std::move(law_a), std::move(law_b)};
  return TransmissionMoments(std::move(impl));
}

TransmissionMoments moments_table(std::map<std::pair<int, int>, double> table) {
  constexpr double tol = 1e-12;
  auto zero = table.find({0, 0});
  if (zero == table.end() || std::abs(zero->second - 1.0) > tol) {
    throw InvalidDistribution("moment table must contain <T_a^0 T_b^0> = 1");
  }
  for (const auto& [order, value] : table) {
    if (order.first < 0 || order.second < 0) {
      throw InvalidDistribution("moment orders must be >= 0");
    }
    require_unit_interval(value, "moment");
    for (auto next : {std::pair{order.first + 1, order.second},
                      std::pair{order.first, order.second + 1}}) {
      auto it = table.find(next);
      if (it != table.end() && it->second > value + tol) {
        throw InvalidDistribution("moments must be non-increasing in each order");
      }
    }
  }
  auto impl = std::make_shared<TransmissionMoments::Impl>();
  impl->backing = TransmissionMoments::Impl::Table{std::move(table)};
  return TransmissionMoments(std::move(impl));
}

TransmissionMoments moments_monte_carlo(TransmissionLaw law, std::int64_t count,
                                        std::uint64_t seed, int max_order) {
  validate(law);
  if (count < 10000) throw InvalidDistribution("Monte-Carlo sample count must be >= 10^4");
  if (max_order < 0) throw std::invalid_argument("max_order must be >= 0");

  std::mt19937_64 rng(seed);
  auto draw = std::visit(
      Overloaded{
          [](const FixedTransmission& f) -> std::function<double(std::mt19937_64&)> {
            return [t = f.t](std::mt19937_64&) { return t; };
          },
          [](const TwoPointTransmission& p) -> std::function<double(std::mt19937_64&)> {
            std::discrete_distribution<std::size_t> pick(p.probabilities.begin(),
                                                         p.probabilities.end());
            return [pick, values = p.values](std::mt19937_64& g) mutable {
              return values[pick(g)];
            };
          },
          [](const BetaTransmission& b) -> std::function<double(std::mt19937_64&)> {
            std::gamma_distribution<double> x(b.alpha, 1.0), y(b.beta, 1.0);
            return [x, y](std::mt19937_64& g) mutable {
              const double u = x(g);
              const double v = y(g);
              return u + v > 0.0 ? u / (u + v) : 0.0;
            };
          },
      },
      law);

  const int orders = max_order + 1;
  std::vector<double> sum(orders, 0.0), sum_sq(orders, 0.0);
  for (std::int64_t s = 0; s < count; ++s) {
    const double t = draw(rng);
    double p = 1.0;
    for (int k = 0; k < orders; ++k) {
      sum[k] += p;
      sum_sq[k] += p * p;
      p *= t;
    }
  }
  TransmissionMoments::Impl::Sampled sampled;
  sampled.mean.resize(orders);
  sampled.error.resize(orders);
  const double n = static_cast<double>(count);
  for (int k = 0; k < orders; ++k) {
    const double mean = sum[k] / n;
    const double var = std::max(0.0, sum_sq[k] / n - mean * mean) * n / (n - 1.0);
    sampled.mean[k] = mean;
    sampled.error[k] = std::sqrt(var / n);
  }
  auto impl = std::make_shared<TransmissionMoments::Impl>();
  impl->backing = std::move(sampled);
  return TransmissionMoments(std::move(impl));
}

NoisyNoonOperator apply_atmospheric_loss(int photons, const TransmissionMoments& moments) {
  if (photons < 1) throw std::invalid_argument("photon number must be >= 1");
  const int n = photons;

  // <T^{2k} (1 - T^2)^{n-k}> expanded into pure moments.
  auto weight = [&](int k, bool mode_a) {
    double sum = 0.0;
    for (int j = 0; j <= n - k; ++j) {
      const int order = 2 * (k + j);
      const double m = mode_a ? moments.moment(order, 0) : moments.moment(0, order);
      sum += (j % 2 == 0 ? 1.0 : -1.0) * binomial(n - k, j) * m;
    }
    return 0.5 * binomial(n, k) * sum;
  };

  std::vector<double> a(n), b(n);
  std::vector<Complex> coh(n, Complex{});
  for (int k = 1; k <= n; ++k) {
    a[k - 1] = weight(k, true);
    b[k - 1] = weight(k, false);
  }
  const double l0 = weight(0, true) + weight(0, false);
  coh[n - 1] = 0.5 * moments.moment(n, n);
  return make_noisy_noon(l0, a, b, coh, true);
}

}  // namespace noon_ent

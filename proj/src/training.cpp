#include "airnet/batch_kernels.hpp"
#include "airnet/errors.hpp"
#include "airnet/monotone_net.hpp"
#include "airnet/rng.hpp"

#include <cmath>
#include <numeric>

namespace airnet {

namespace {

constexpr std::size_t kConvergenceWindow = 20;

// Adam with the usual constants; state covers theta then beta.
class AdamState {
public:
  explicit AdamState(std::size_t size) : m_(2 * size, 0.0), v_(2 * size, 0.0) {}

  void step(MonotoneNetParams &p, const MonotoneNetParams &g, double lr) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    const std::size_t n = p.size();
    for (std::size_t at = 0; at < n; ++at) {
      p.theta[at] -= lr * update(at, g.theta[at], c1, c2);
      p.beta[at] -= lr * update(n + at, g.beta[at], c1, c2);
    }
  }

private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;

  double update(std::size_t slot, double g, double c1, double c2) {
    m_[slot] = kBeta1 * m_[slot] + (1.0 - kBeta1) * g;
    v_[slot] = kBeta2 * v_[slot] + (1.0 - kBeta2) * g * g;
    return (m_[slot] / c1) / (std::sqrt(v_[slot] / c2) + kEps);
  }

  std::vector<double> m_;
  std::vector<double> v_;
  std::size_t t_ = 0;
};

double window_mean(const std::vector<double> &xs, std::size_t end) {
  const auto first = xs.begin() + static_cast<std::ptrdiff_t>(end - kConvergenceWindow);
  return std::accumulate(first, first + kConvergenceWindow, 0.0) /
         static_cast<double>(kConvergenceWindow);
}

} // namespace

TrainResult train(const NetConfig &config, const ValuationDistribution &dist,
                  int threads) {
  config.validate();
  dist.validate();

  TrainResult result{init_params(config.n_bidders, config.groups,
                                 config.units, config.seed),
                     {}};
  std::mt19937_64 batch_rng(sub_seed(config.seed, 1));
  AdamState adam(result.params.size());
  TrainingTrace &trace = result.trace;
  trace.losses.reserve(config.iterations);

  for (std::size_t it = 0; it < config.iterations; ++it) {
    const std::vector<ValuationProfile> batch =
        draw_profiles(batch_rng, dist, config.n_bidders, config.batch_size);
    const LossAndGrad lg =
        loss_and_grad(result.params, batch, config.kappa, threads);
    if (!std::isfinite(lg.loss))
      throw TrainingDiverged(it);
    trace.losses.push_back(lg.loss);

    MonotoneNetParams &p = result.params;
    if (config.optimizer == Optimizer::Adam) {
      adam.step(p, lg.grad, config.learning_rate);
    } else {
      for (std::size_t at = 0; at < p.size(); ++at) {
        p.theta[at] -= config.learning_rate * lg.grad.theta[at];
        p.beta[at] -= config.learning_rate * lg.grad.beta[at];
      }
    }

    // Compare consecutive window means; single-batch losses are too noisy.
    const std::size_t seen = trace.losses.size();
    if (config.convergence_tol > 0.0 && seen >= 2 * kConvergenceWindow) {
      const double change = window_mean(trace.losses, seen) -
                            window_mean(trace.losses, seen - kConvergenceWindow);
      if (std::abs(change) < config.convergence_tol) {
        trace.converged_at = it;
        break;
      }
    }
  }
  trace.final_loss = trace.losses.back();
  return result;
}

} // namespace airnet

#include "airnet/batch_kernels.hpp"

#include "airnet/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace airnet {

namespace {

// Scratch space reused across the samples handled by one thread.
struct SampleScratch {
  std::vector<double> transformed;
  std::vector<ActiveUnit> forward_active;
  std::vector<double> g;
  std::vector<double> payment;
  std::vector<ActiveUnit> inverse_active;
  std::vector<double> d_transformed;

  explicit SampleScratch(std::size_t n)
      : transformed(n), forward_active(n), g(n), payment(n),
        inverse_active(n), d_transformed(n) {}
};

// Loss of one profile; writes its (unscaled) gradient into the zeroed
// buffers d_theta / d_beta, both of params.size() entries.
double sample_loss_and_grad(const MonotoneNetParams &params,
                            std::span<const double> weights,
                            std::span<const double> values, double kappa,
                            SampleScratch &s, std::span<double> d_theta,
                            std::span<double> d_beta) {
  const std::size_t n = params.n_bidders;

  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const TransformResult fwd = transform_active(params, i, values[i]);
    s.transformed[i] = fwd.value;
    s.forward_active[i] = fwd.active;
    shift = std::max(shift, kappa * fwd.value);
  }

  double z = std::exp(-shift);
  for (std::size_t i = 0; i < n; ++i) {
    s.g[i] = std::exp(kappa * s.transformed[i] - shift);
    z += s.g[i];
  }
  for (std::size_t i = 0; i < n; ++i)
    s.g[i] /= z;

  // Highest and second-highest transformed bids give every bidder's rival.
  std::size_t top = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (s.transformed[i] > s.transformed[top])
      top = i;
  }
  std::size_t second = top == 0 ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != top && s.transformed[i] > s.transformed[second])
      second = i;
  }

  double expected_revenue = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rival = i == top ? second : top;
    const double y = std::max(0.0, s.transformed[rival]);
    const TransformResult inv = transform_inverse_active(params, i, y);
    s.payment[i] = inv.value;
    s.inverse_active[i] = inv.active;
    expected_revenue += s.g[i] * inv.value;
  }

  // Softmax: dL/dbbar_m = -kappa * g_m * (p_m - sum_i g_i p_i).
  for (std::size_t m = 0; m < n; ++m)
    s.d_transformed[m] = -kappa * s.g[m] * (s.payment[m] - expected_revenue);

  for (std::size_t i = 0; i < n; ++i) {
    const ActiveUnit a = s.inverse_active[i];
    const std::size_t at = params.index(i, a.group, a.unit);
    const double w = weights[at];
    // p = (y - beta) / w, dL/dp = -g.
    d_theta[at] += s.g[i] * s.payment[i];
    d_beta[at] += s.g[i] / w;
    const std::size_t rival = i == top ? second : top;
    if (s.transformed[rival] > 0.0)
      s.d_transformed[rival] -= s.g[i] / w;
  }

  for (std::size_t m = 0; m < n; ++m) {
    const ActiveUnit a = s.forward_active[m];
    const std::size_t at = params.index(m, a.group, a.unit);
    d_theta[at] += s.d_transformed[m] * weights[at] * values[m];
    d_beta[at] += s.d_transformed[m];
  }

  return -expected_revenue;
}

void check_batch(const MonotoneNetParams &params,
                 std::span<const ValuationProfile> batch) {
  if (batch.empty())
    throw InvalidInput("loss gradient needs a non-empty batch");
  if (params.n_bidders < 2)
    throw InvalidInput("loss gradient needs at least two bidders");
  for (const ValuationProfile &p : batch) {
    if (p.values.size() != params.n_bidders)
      throw InvalidInput("profile size does not match network bidder count");
  }
}

std::vector<double> exp_weights(const MonotoneNetParams &params) {
  std::vector<double> w(params.size());
  for (std::size_t at = 0; at < w.size(); ++at)
    w[at] = std::exp(params.theta[at]);
  return w;
}

void scale(LossAndGrad &out, std::size_t batch_size) {
  const double inv = 1.0 / static_cast<double>(batch_size);
  out.loss *= inv;
  for (double &x : out.grad.theta)
    x *= inv;
  for (double &x : out.grad.beta)
    x *= inv;
}

} // namespace

LossAndGrad loss_and_grad_serial(const MonotoneNetParams &params,
                                 std::span<const ValuationProfile> batch,
                                 double kappa) {
  check_batch(params, batch);
  const std::vector<double> weights = exp_weights(params);
  const std::size_t size = params.size();

  LossAndGrad out{0.0, MonotoneNetParams(params.n_bidders, params.groups,
                                         params.units)};
  SampleScratch scratch(params.n_bidders);
  std::vector<double> d_theta(size), d_beta(size);
  for (const ValuationProfile &profile : batch) {
    std::fill(d_theta.begin(), d_theta.end(), 0.0);
    std::fill(d_beta.begin(), d_beta.end(), 0.0);
    out.loss += sample_loss_and_grad(params, weights, profile.values, kappa,
                                     scratch, d_theta, d_beta);
    for (std::size_t at = 0; at < size; ++at) {
      out.grad.theta[at] += d_theta[at];
      out.grad.beta[at] += d_beta[at];
    }
  }
  scale(out, batch.size());
  return out;
}

LossAndGrad loss_and_grad_parallel(const MonotoneNetParams &params,
                                   std::span<const ValuationProfile> batch,
                                   double kappa, int threads) {
  check_batch(params, batch);
  const std::vector<double> weights = exp_weights(params);
  const std::size_t size = params.size();
  const std::size_t batch_size = batch.size();

  std::vector<double> sample_loss(batch_size);
  std::vector<double> d_theta(batch_size * size, 0.0);
  std::vector<double> d_beta(batch_size * size, 0.0);

#pragma omp parallel num_threads(std::max(threads, 1))
  {
    SampleScratch scratch(params.n_bidders);
#pragma omp for schedule(static)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(batch_size);
         ++s) {
      const std::size_t row = static_cast<std::size_t>(s) * size;
      sample_loss[s] = sample_loss_and_grad(
          params, weights, batch[s].values, kappa, scratch,
          std::span<double>(d_theta).subspan(row, size),
          std::span<double>(d_beta).subspan(row, size));
    }
  }

  LossAndGrad out{0.0, MonotoneNetParams(params.n_bidders, params.groups,
                                         params.units)};
  for (std::size_t s = 0; s < batch_size; ++s) {
    out.loss += sample_loss[s];
    const std::size_t row = s * size;
    for (std::size_t at = 0; at < size; ++at) {
      out.grad.theta[at] += d_theta[row + at];
      out.grad.beta[at] += d_beta[row + at];
    }
  }
  scale(out, batch_size);
  return out;
}

LossAndGrad loss_and_grad(const MonotoneNetParams &params,
                          std::span<const ValuationProfile> batch,
                          double kappa, int threads) {
  if (threads <= 1)
    return loss_and_grad_serial(params, batch, kappa);
  return loss_and_grad_parallel(params, batch, kappa, threads);
}

} // namespace airnet

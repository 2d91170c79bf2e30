#pragma once

// Batch evaluation of the training loss and its gradient.
//
// The serial routine is the reference implementation. The OpenMP routine
// evaluates samples concurrently into per-sample slots and reduces them in
// sample order, so both produce bitwise-identical results for any thread
// count.

#include "airnet/monotone_net.hpp"

#include <span>

namespace airnet {

struct LossAndGrad {
  double loss = 0.0;
  MonotoneNetParams grad;
};

LossAndGrad loss_and_grad_serial(const MonotoneNetParams &params,
                                 std::span<const ValuationProfile> batch,
                                 double kappa);

LossAndGrad loss_and_grad_parallel(const MonotoneNetParams &params,
                                   std::span<const ValuationProfile> batch,
                                   double kappa, int threads);

/// Dispatches to the serial path when threads <= 1.
LossAndGrad loss_and_grad(const MonotoneNetParams &params,
                          std::span<const ValuationProfile> batch,
                          double kappa, int threads);

} // namespace airnet

// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <limits>

namespace tweetfuse {

/// Divides the learning rate by `factor` once `patience` consecutive epochs
/// fail to strictly improve on the best validation loss seen so far. The
/// counter restarts after each decay; the best loss is kept.
class PlateauScheduler {
 public:
  PlateauScheduler(double lr, std::size_t patience, double factor);

  /// Records one epoch's validation loss; returns the lr for the next epoch.
  double step(double val_loss);

  double lr() const { return lr_; }
  double best() const { return best_; }
  std::size_t bad_epochs() const { return bad_epochs_; }

 private:
  double lr_;
  std::size_t patience_;
  double factor_;
  double best_ = std::numeric_limits<double>::infinity();
  std::size_t bad_epochs_ = 0;
};

}  // namespace tweetfuse

// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/schedule.hpp"

#include "tweetfuse/error.hpp"

namespace tweetfuse {

PlateauScheduler::PlateauScheduler(double lr, std::size_t patience, double factor)
    : lr_(lr), patience_(patience), factor_(factor) {
  if (!(lr > 0.0)) throw Error("scheduler: lr must be positive");
  if (patience == 0) throw Error("scheduler: patience must be positive");
  if (!(factor >= 1.0)) throw Error("scheduler: decay factor must be >= 1");
}

double PlateauScheduler::step(double val_loss) {
  if (val_loss < best_) {
    best_ = val_loss;
    bad_epochs_ = 0;
  } else if (++bad_epochs_ >= patience_) {
    lr_ /= factor_;
    bad_epochs_ = 0;
  }
  return lr_;
}

}  // namespace tweetfuse

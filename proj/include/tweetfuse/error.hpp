// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace tweetfuse {

/// Raised for invalid data, malformed files, and violated preconditions on
/// user-supplied inputs. The CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tweetfuse

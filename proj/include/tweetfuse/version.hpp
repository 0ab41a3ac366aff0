// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace tweetfuse {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tweetfuse

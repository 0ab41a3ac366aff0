// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tweetfuse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Output root used when --out is omitted.
inline constexpr const char* kOutRootEnv = "TWEETFUSE_OUT_ROOT";

/// Runs one command. `args` excludes the program name.
///
///   pool   --annotations F --out dataset.json
///   split  --dataset D --k 10 --seed S --out splits.json
///   synth  --n N --features name:dim[,...] --separation X --seed S --out DIR
///   train  --config run.json --out DIR [--folds 0,3,7] [--jobs N]
///   report --runs DIR... --format json|table --out F
///
/// Returns 0 on success, 1 on usage errors, 2 on data/validation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tweetfuse::cli

// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace tweetfuse {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Lowercase hex SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes bytes to a file, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace tweetfuse
